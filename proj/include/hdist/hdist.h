/* C interface to the hdist library: certified heights, canonical heights
 * and arithmetic distances for morphisms of projective space over Q.
 *
 * Results are returned as JSON text in strings owned by the caller and
 * released with hd_string_free. Every call returns an hd_status; on failure
 * hd_last_error() describes the problem (per thread, until the next call). */
#ifndef HDIST_HDIST_H
#define HDIST_HDIST_H

#include <stddef.h>

#if defined(HDIST_BUILDING)
#define HD_API __attribute__((visibility("default")))
#else
#define HD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hd_status {
    HD_OK = 0,
    HD_ERR_INVALID = 1,       /* bad input: parse errors, wrong sizes, bad arguments */
    HD_ERR_DEGENERATE = 2,    /* zero point, degenerate configuration, singular matrix */
    HD_ERR_NOT_MORPHISM = 3,  /* common zero of the coordinates, or orbit hit the base locus */
    HD_ERR_RESOURCE = 4,      /* requested accuracy needs more than the bit ceiling */
    HD_ERR_INTERNAL = 5
} hd_status;

typedef struct hd_point hd_point;
typedef struct hd_map hd_map;

typedef struct hd_options {
    unsigned precision_bits;          /* log enclosure precision, default 53 */
    const char* eps;                  /* target width as an exact rational, default "1/1000000" */
    unsigned long bound;              /* sample coordinate bound, default 2 */
    unsigned long long seed;          /* for randomized scans, default 0 */
    unsigned long long bit_ceiling;   /* 0 = library default */
} hd_options;

HD_API void hd_options_init(hd_options* options);

HD_API const char* hd_status_name(hd_status status);
HD_API const char* hd_last_error(void);
HD_API void hd_string_free(char* s);

/* Points: "x0:x1:...:xN" with integer or rational entries. */
HD_API hd_status hd_point_parse(const char* text, hd_point** out);
HD_API void hd_point_free(hd_point* point);
HD_API hd_status hd_point_to_string(const hd_point* point, char** out);

/* Maps: JSON {"N":..,"d":..,"coords":[..]}, "power:N,d", "phi-a:d,A" or
 * coordinates separated by ':' ("x^2 + y^2 : x*y"). */
HD_API hd_status hd_map_parse(const char* text, hd_map** out);
HD_API void hd_map_free(hd_map* map);
HD_API hd_status hd_map_to_json(const hd_map* map, char** out);
/* Sets *is_morphism to 1 or 0 from the certificate test. */
HD_API hd_status hd_map_is_morphism(const hd_map* map, int* is_morphism);

HD_API hd_status hd_point_height(const hd_point* point, const hd_options* options, char** json);
HD_API hd_status hd_map_height(const hd_map* map, const hd_options* options, char** json);

/* method: NULL or "auto", "sylvester", "macaulay". */
HD_API hd_status hd_certificate(const hd_map* map, const char* method, const hd_options* options, char** json);
HD_API hd_status hd_check_certificate(const hd_map* map, const char* certificate_json, char** json);

HD_API hd_status hd_canonical_height(const hd_map* map, const hd_point* point, const hd_options* options,
                                     char** json);

/* mode: "delta" for sup |h_a - h_b|, "Delta" for sup |(1/deg a) h_b(a(P)) - h_b(P)|.
 * extra_points: NULL or points separated by spaces, added to the sample. */
HD_API hd_status hd_distance(const hd_map* a, const hd_map* b, const char* mode, const char* extra_points,
                             const hd_options* options, char** json);
HD_API hd_status hd_complexity(const hd_map* map, const char* extra_points, const hd_options* options, char** json);

/* pairs_json: {"N":..,"d":..,"pairs":[{"point":"1:0","value":[1,0]}, ...]} */
HD_API hd_status hd_recover(const char* pairs_json, char** json);

/* points: K points separated by spaces, or NULL to scan `configurations`
 * random configurations from the sample bound. */
HD_API hd_status hd_prop9(const hd_map* map, const char* points, unsigned long configurations,
                          const hd_options* options, char** json);

/* matrix: rows separated by ';', entries by ',', e.g. "1,1;0,1". */
HD_API hd_status hd_conjugate(const hd_map* map, const char* matrix, hd_map** out);
HD_API hd_status hd_class_distance(const hd_map* a, const hd_map* b, long entry_bound, const hd_options* options,
                                   char** json);

/* name: "phi-a", "alpha" or "finiteness"; params_json holds the experiment's
 * parameters; format: "json" or "csv". */
HD_API hd_status hd_experiment(const char* name, const char* params_json, const hd_options* options,
                               const char* format, char** out);

#ifdef __cplusplus
}
#endif

#endif
