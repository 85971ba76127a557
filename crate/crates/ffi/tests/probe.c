#include <stdio.h>
#include "qweil.h"

int main(void) {
    QweilContext *ctx = NULL;
    if (qweil_context_load("u1", &ctx) != QWEIL_STATUS_OK) {
        fprintf(stderr, "%s\n", qweil_last_error());
        return 1;
    }
    size_t dim = 0;
    qweil_context_dim(ctx, &dim);
    printf("dim %zu\n", dim);

    size_t dims[8];
    size_t len = 0;
    if (qweil_exterior_dims(ctx, 3, dims, 8, &len) != QWEIL_STATUS_OK) {
        fprintf(stderr, "%s\n", qweil_last_error());
        return 1;
    }
    printf("vee");
    for (size_t i = 0; i < len; i++) {
        printf("%c%zu", i ? ',' : ' ', dims[i]);
    }
    printf("\n");
    qweil_context_free(ctx);

    QweilStatus s = qweil_context_load("nope", &ctx);
    printf("missing %d %s\n", (int)s, qweil_last_error());
    return ctx == NULL ? 0 : 1;
}
