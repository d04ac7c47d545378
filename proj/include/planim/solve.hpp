#pragma once

#include <chrono>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace planim::service {

inline constexpr std::string_view kDefaultEndpoint = "http://solver.planning.domains/solve";
inline constexpr std::string_view kEndpointVariable = "PLANIM_ENDPOINT";
inline constexpr std::chrono::seconds kDefaultTimeout{60};

struct SolveRequest {
  std::string domain_text;
  std::string problem_text;
  std::string endpoint;
  std::chrono::milliseconds timeout = kDefaultTimeout;
};

struct SolveResponse {
  enum class Status { Ok, Error };

  Status status = Status::Error;
  /// Actions in plan order, each as "(name arg ...)". Empty unless Ok.
  std::vector<std::string> plan;
  /// Service-reported failure text, verbatim. Empty unless Error.
  std::string message;

  bool ok() const { return status == Status::Ok; }
};

/// Failure to obtain a well-formed answer. A service that answers with a
/// failure of its own is not an exception; see SolveResponse::Status::Error.
class SolveError : public std::runtime_error {
 public:
  enum class Kind { InvalidEndpoint, Transport, Timeout, HttpStatus, BadResponse };

  SolveError(Kind kind, const std::string& message, int http_status = 0);

  Kind kind() const { return kind_; }
  int http_status() const { return http_status_; }

 private:
  Kind kind_;
  int http_status_;
};

std::string_view solve_error_kind_name(SolveError::Kind kind);

/// $PLANIM_ENDPOINT when set and non-empty, else kDefaultEndpoint.
std::string default_endpoint();

/// POSTs form fields `domain` and `problem` to the endpoint and adapts the
/// reply with parse_solve_response.
SolveResponse solve_remote(const SolveRequest& request);

/// Expected body:
///   {"status": "ok", "result": {"plan": [{"name": "(a x)"} | "(a x)", ...]}}
///   {"status": "error", "result": "<message>" | {"error"|"output": "<message>"}}
/// Anything else throws SolveError::Kind::BadResponse.
SolveResponse parse_solve_response(std::string_view body);

/// "(Move A B)" or "move a b" -> "(move a b)". Throws BadResponse on
/// unbalanced or empty text.
std::string normalize_action(std::string_view text);

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

/// Throws SolveError::Kind::InvalidEndpoint for anything but http(s) URLs.
Endpoint split_endpoint(std::string_view url);

}  // namespace planim::service
