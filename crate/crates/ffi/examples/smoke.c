/* Decides the U polygon and asks for a path through it.
 *
 *   cargo build -p selfapproach-ffi --release
 *   cc crates/ffi/examples/smoke.c -Icrates/ffi/include \
 *      target/release/libselfapproach_ffi.a -lm -lpthread -ldl -o smoke
 */
#include <stdio.h>
#include "selfapproach.h"

int main(void) {
    const double u[] = {0, 0, 3, 0, 3, 3, 2, 3, 2, 1, 1, 1, 1, 3, 0, 3};
    SaPolygon *poly = NULL;
    SaStatus st = sa_polygon_new(u, 8, &poly);
    if (st != SA_STATUS_OK) {
        fprintf(stderr, "%s: %s\n", sa_status_name(st), sa_last_error_message());
        return 2;
    }
    bool yes = false;
    size_t tests = 0;
    sa_polygon_is_self_approaching(poly, &yes, &tests);
    printf("self-approaching: %s (%zu tests)\n", yes ? "yes" : "no", tests);

    SaPath *path = NULL;
    char *json = NULL;
    st = sa_shortest_path(poly, 0.5, 0.5, 2.5, 0.5, &path, &json);
    if (st == SA_STATUS_OK) {
        double len = 0;
        sa_path_length(path, &len);
        printf("path: %zu pieces, length %.6f\n", sa_path_piece_count(path), len);
    } else {
        printf("%s: %s\n", sa_status_name(st), json ? json : sa_last_error_message());
    }
    sa_string_free(json);
    sa_path_free(path);
    sa_polygon_free(poly);
    return 0;
}
