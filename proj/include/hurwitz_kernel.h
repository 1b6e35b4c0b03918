/* C interface to the exact-arithmetic kernel. All structured data crosses
 * the boundary as JSON text; handles are opaque and must be released with
 * the matching free function. Every entry point is safe to call from
 * multiple threads on distinct sessions. */

#ifndef HURWITZ_KERNEL_H
#define HURWITZ_KERNEL_H

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by hk_run:
 *   0  request executed, every checked identity held
 *   1  request executed, at least one identity failed (see the report)
 *   2  malformed request or invalid input data
 *   3  internal error */
#define HK_OK 0
#define HK_CHECK_FAILED 1
#define HK_BAD_REQUEST 2
#define HK_INTERNAL_ERROR 3

typedef struct hk_session hk_session;

/* Creates a session. Returns NULL only on allocation failure. */
hk_session* hk_session_new(void);
void hk_session_free(hk_session* session);

/* Library version and the identifier of the deterministic generator used
 * for randomized trials. */
const char* hk_version(void);
const char* hk_prng_id(void);

/* Executes one request (JSON text) and stores the response (JSON text) in
 * *response_out; the caller owns the buffer and frees it with
 * hk_buffer_free. On status 2/3 the response may be NULL and
 * hk_last_error holds a message. */
int hk_run(hk_session* session, const char* request_json, char** response_out);

/* Message for the most recent failing hk_run on this session; empty string
 * when the last call succeeded. */
const char* hk_last_error(const hk_session* session);

void hk_buffer_free(char* buffer);

/* Effective parallelism cap (HURWITZ_KERNEL_THREADS or hardware). */
int hk_thread_cap(void);

#ifdef __cplusplus
}
#endif

#endif /* HURWITZ_KERNEL_H */
