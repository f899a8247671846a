#ifndef THETAVAL_H
#define THETAVAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ThetavalStatus {
  THETAVAL_STATUS_OK = 0,
  THETAVAL_STATUS_NULL_POINTER = 1,
  THETAVAL_STATUS_INVALID_UTF8 = 2,
  THETAVAL_STATUS_PARSE = 3,
  THETAVAL_STATUS_DOMAIN = 4,
  THETAVAL_STATUS_UNKNOWN_ID = 5,
  THETAVAL_STATUS_PRECISION = 6,
  THETAVAL_STATUS_EVALUATION = 7,
  THETAVAL_STATUS_PANIC = 8,
} ThetavalStatus;

/**
 * A certified enclosure: midpoint and radius.
 */
typedef struct ThetavalBall ThetavalBall;

/**
 * Outcome of verifying one catalog entry.
 */
typedef struct ThetavalVerification ThetavalVerification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *thetaval_version(void);

/**
 * Message for the last failure on this thread, or NULL. Free with `thetaval_string_free`.
 */
char *thetaval_last_error_message(void);

void thetaval_string_free(char *s);

/**
 * Parses and evaluates an expression such as `phi(qpoint(+1, 1))` at `prec_bits`.
 */
enum ThetavalStatus thetaval_eval(const char *expr, uint32_t prec_bits, struct ThetavalBall **out);

void thetaval_ball_free(struct ThetavalBall *b);

/**
 * Nearest double to the midpoint; NaN for a NULL handle.
 */
double thetaval_ball_mid_f64(const struct ThetavalBall *b);

/**
 * Upper bound on `log10` of the radius; negative infinity for an exact ball.
 */
double thetaval_ball_rad_log10(const struct ThetavalBall *b);

/**
 * Midpoint as a decimal string with `digits` significant digits.
 */
enum ThetavalStatus thetaval_ball_mid_decimal(const struct ThetavalBall *b,
                                              size_t digits,
                                              char **out);

/**
 * 1 if the two enclosures intersect, 0 if not, -1 on a NULL handle.
 */
int32_t thetaval_ball_overlaps(const struct ThetavalBall *a, const struct ThetavalBall *b);

/**
 * Verifies one catalog entry. A completed check that fails still returns
 * `Ok`; query the handle for the verdict.
 */
enum ThetavalStatus thetaval_verify(const char *id,
                                    uint32_t prec_bits,
                                    struct ThetavalVerification **out);

void thetaval_verification_free(struct ThetavalVerification *v);

/**
 * 1 if verified, 0 if not, -1 on a NULL handle.
 */
int32_t thetaval_verification_passed(const struct ThetavalVerification *v);

uint32_t thetaval_verification_agreement_digits(const struct ThetavalVerification *v);

/**
 * Precision the verdict was reached at (after any escalation).
 */
uint32_t thetaval_verification_prec_bits(const struct ThetavalVerification *v);

/**
 * Catalog listing as a JSON array of `{id, lhs_text, rhs_text, provenance}`.
 */
enum ThetavalStatus thetaval_catalog_json(char **out);

/**
 * Verifies every catalog entry and writes the JSON report.
 */
enum ThetavalStatus thetaval_verify_all_json(uint32_t prec_bits, uint32_t jobs, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* THETAVAL_H */
