/* Links against librasad_ffi and drives the ABI from plain C. */

#include <stdio.h>
#include <string.h>

#include "rasad.h"

static int failures = 0;

#define CHECK(cond)                                                  \
    do {                                                             \
        if (!(cond)) {                                               \
            fprintf(stderr, "FAIL %s:%d: %s\n", __FILE__, __LINE__,  \
                    #cond);                                          \
            failures++;                                              \
        }                                                            \
    } while (0)

int main(void) {
    CHECK(rasad_version() != NULL);

    char *stem = NULL;
    CHECK(rasad_stem("المسلمين", &stem) == RasadStatus_Ok);
    CHECK(stem != NULL && strcmp(stem, "سلم") == 0);
    rasad_string_free(stem);

    CHECK(rasad_stem(NULL, &stem) == RasadStatus_NullPointer);
    CHECK(strlen(rasad_last_error()) > 0);

    RasadEngine *engine = rasad_engine_new();
    CHECK(engine != NULL);
    CHECK(rasad_is_stop(engine, "في") == 1);
    CHECK(rasad_is_stop(engine, "قتل") == 0);

    uint32_t counts[4] = {0, 0, 0, 0};
    RasadLabel label;
    int second_pass;
    CHECK(rasad_classify(engine, "قتل قتل دين", counts, &label,
                         &second_pass) == RasadStatus_Ok);
    CHECK(counts[0] == 2 && counts[1] == 1 && counts[2] == 0 &&
          counts[3] == 0);
    CHECK(label == RasadLabel_Violence);
    CHECK(second_pass == RASAD_SECOND_PASS_NONE);

    rasad_engine_free(engine);

    if (failures == 0) {
        printf("c smoke: all checks passed\n");
        return 0;
    }
    fprintf(stderr, "c smoke: %d checks failed\n", failures);
    return 1;
}
