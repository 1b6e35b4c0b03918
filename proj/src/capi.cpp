#include "hurwitz_kernel.h"

#include <cstring>
#include <mutex>
#include <new>
#include <string>

#include "hzk/parallel.hpp"
#include "hzk/prng.hpp"
#include "hzk/verify.hpp"

struct hk_session {
  std::mutex mu;
  std::string last_error;
};

namespace {

constexpr const char* kVersion = "1.0.0";

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(::operator new(s.size() + 1, std::nothrow));
  if (out == nullptr) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

hk_session* hk_session_new(void) { return new (std::nothrow) hk_session; }

void hk_session_free(hk_session* session) { delete session; }

const char* hk_version(void) { return kVersion; }

const char* hk_prng_id(void) { return hzk::kPrngId; }

int hk_run(hk_session* session, const char* request_json, char** response_out) {
  if (session == nullptr || request_json == nullptr || response_out == nullptr)
    return HK_BAD_REQUEST;
  *response_out = nullptr;
  std::lock_guard<std::mutex> lock(session->mu);
  session->last_error.clear();
  try {
    hzk::Json request =
        hzk::Json::parse(request_json, nullptr, /*allow_exceptions=*/true);
    hzk::Json response = hzk::run_request(request);
    int status = hzk::response_status(response);
    response["status"] = status;
    *response_out = dup_string(response.dump());
    if (*response_out == nullptr) {
      session->last_error = "allocation failure";
      return HK_INTERNAL_ERROR;
    }
    return status == 0 ? HK_OK : HK_CHECK_FAILED;
  } catch (const hzk::Json::parse_error& e) {
    session->last_error = std::string("request is not valid JSON: ") + e.what();
    return HK_BAD_REQUEST;
  } catch (const hzk::BadRequest& e) {
    session->last_error = e.what();
    return HK_BAD_REQUEST;
  } catch (const std::invalid_argument& e) {
    session->last_error = e.what();
    return HK_BAD_REQUEST;
  } catch (const std::exception& e) {
    session->last_error = e.what();
    return HK_INTERNAL_ERROR;
  }
}

const char* hk_last_error(const hk_session* session) {
  return session == nullptr ? "" : session->last_error.c_str();
}

void hk_buffer_free(char* buffer) { ::operator delete(buffer); }

int hk_thread_cap(void) { return hzk::thread_cap(); }

}  // extern "C"
