#include <stdio.h>
#include <string.h>
#include "odesign.h"

#define CHECK(cond)                                                        \
    do {                                                                   \
        if (!(cond)) {                                                     \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond, \
                    od_last_error_message());                              \
            return 1;                                                      \
        }                                                                  \
    } while (0)

int main(void) {
    OdDesign *rh = NULL;
    CHECK(od_rh(9, OD_FAMILY_R, false, &rh) == OD_STATUS_OK);

    size_t p, n, k;
    CHECK(od_design_shape(rh, &p, &n, &k) == OD_STATUS_OK);
    CHECK(p == 16 && n == 9 && k == 8);

    OdCell cell;
    CHECK(od_design_cell(rh, 0, 8, &cell) == OD_STATUS_OK);
    CHECK(cell.sign == -1 && cell.var == 7 && cell.conj && cell.scaled);

    bool ok = false;
    CHECK(od_verify(rh, &ok) == OD_STATUS_OK && ok);

    char *json = NULL;
    CHECK(od_design_to_json(rh, &json) == OD_STATUS_OK);
    OdDesign *back = NULL;
    CHECK(od_design_from_json(json, &back) == OD_STATUS_OK);
    char *again = NULL;
    CHECK(od_design_to_json(back, &again) == OD_STATUS_OK);
    CHECK(strcmp(json, again) == 0);

    uint64_t v = 0;
    CHECK(od_hopf_stiefel(10, 10, &v) == OD_STATUS_OK && v == 16);
    CHECK(od_square(12, OD_FAMILY_GP, false, &back) == OD_STATUS_INVALID_ARGUMENT);
    CHECK(strlen(od_last_error_message()) > 0);

    od_string_free(json);
    od_string_free(again);
    od_design_free(back);
    od_design_free(rh);
    puts("ok");
    return 0;
}
