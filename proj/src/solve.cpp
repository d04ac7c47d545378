#include "planim/solve.hpp"

#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "planim/sexpr.hpp"

namespace planim::service {

using json = nlohmann::json;

SolveError::SolveError(Kind kind, const std::string& message, int http_status)
    : std::runtime_error(message), kind_(kind), http_status_(http_status) {}

std::string_view solve_error_kind_name(SolveError::Kind kind) {
  switch (kind) {
    case SolveError::Kind::InvalidEndpoint: return "invalid endpoint";
    case SolveError::Kind::Transport: return "transport error";
    case SolveError::Kind::Timeout: return "timeout";
    case SolveError::Kind::HttpStatus: return "HTTP status error";
    case SolveError::Kind::BadResponse: return "unparseable response";
  }
  return "error";
}

std::string default_endpoint() {
  const char* env = std::getenv(std::string(kEndpointVariable).c_str());
  if (env && *env) return env;
  return std::string(kDefaultEndpoint);
}

Endpoint split_endpoint(std::string_view url) {
  std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw SolveError(SolveError::Kind::InvalidEndpoint,
                     "endpoint '" + std::string(url) + "' is not an http(s) URL");
  }
  std::string scheme = to_lower(url.substr(0, scheme_end));
  if (scheme != "http" && scheme != "https") {
    throw SolveError(SolveError::Kind::InvalidEndpoint,
                     "endpoint '" + std::string(url) + "' is not an http(s) URL");
  }
  std::size_t host_start = scheme_end + 3;
  std::size_t slash = url.find('/', host_start);
  Endpoint e;
  e.origin = std::string(url.substr(0, slash));
  e.path = slash == std::string_view::npos ? "/" : std::string(url.substr(slash));
  if (host_start >= e.origin.size()) {
    throw SolveError(SolveError::Kind::InvalidEndpoint,
                     "endpoint '" + std::string(url) + "' has no host");
  }
  return e;
}

std::string normalize_action(std::string_view text) {
  std::string s(text);
  std::size_t a = s.find_first_not_of(" \t\r\n");
  std::size_t b = s.find_last_not_of(" \t\r\n");
  if (a == std::string::npos) throw SolveError(SolveError::Kind::BadResponse, "empty plan action");
  s = s.substr(a, b - a + 1);
  if (s.front() != '(') s = "(" + s + ")";
  try {
    SExpr e = read_single_sexpr(s);
    if (!e.is_list() || e.items.empty()) throw ParseError("expected (name arg ...)", e.loc);
    std::string out = "(";
    for (std::size_t i = 0; i < e.items.size(); ++i) {
      if (!e.items[i].is_symbol()) throw ParseError("expected a name", e.items[i].loc);
      if (i) out += ' ';
      out += e.items[i].text;
    }
    return out + ")";
  } catch (const ParseError& err) {
    throw SolveError(SolveError::Kind::BadResponse,
                     "malformed plan action '" + std::string(text) + "': " + err.what());
  }
}

SolveResponse parse_solve_response(std::string_view body) {
  auto bad = [](const std::string& why) {
    return SolveError(SolveError::Kind::BadResponse, "unexpected response from service: " + why);
  };
  json j;
  try {
    j = json::parse(body.begin(), body.end());
  } catch (const json::parse_error&) {
    throw bad("body is not JSON");
  }
  if (!j.is_object()) throw bad("body is not a JSON object");
  auto status = j.find("status");
  if (status == j.end() || !status->is_string()) throw bad("missing string field 'status'");
  auto result = j.find("result");
  if (result == j.end()) throw bad("missing field 'result'");

  SolveResponse r;
  const std::string s = status->get<std::string>();
  if (s == "ok") {
    if (!result->is_object()) throw bad("'result' is not an object");
    auto plan = result->find("plan");
    if (plan == result->end() || !plan->is_array()) throw bad("missing array 'result.plan'");
    for (const auto& step : *plan) {
      if (step.is_string()) {
        r.plan.push_back(normalize_action(step.get<std::string>()));
      } else if (step.is_object() && step.contains("name") && step["name"].is_string()) {
        r.plan.push_back(normalize_action(step["name"].get<std::string>()));
      } else {
        throw bad("plan entry is neither a string nor an object with a 'name'");
      }
    }
    r.status = SolveResponse::Status::Ok;
    return r;
  }
  if (s == "error") {
    r.status = SolveResponse::Status::Error;
    if (result->is_string()) {
      r.message = result->get<std::string>();
    } else if (result->is_object()) {
      for (const char* key : {"error", "output"}) {
        auto it = result->find(key);
        if (it != result->end() && it->is_string()) {
          r.message = it->get<std::string>();
          return r;
        }
      }
      r.message = result->dump();
    } else {
      r.message = result->dump();
    }
    return r;
  }
  throw bad("unknown status '" + s + "'");
}

SolveResponse solve_remote(const SolveRequest& request) {
  const Endpoint ep = split_endpoint(request.endpoint);
  httplib::Client client(ep.origin);
  if (!client.is_valid()) {
    throw SolveError(SolveError::Kind::InvalidEndpoint,
                     "cannot use endpoint '" + request.endpoint + "'");
  }
  client.set_connection_timeout(request.timeout);
  client.set_read_timeout(request.timeout);
  client.set_write_timeout(request.timeout);
  httplib::Params form{{"domain", request.domain_text}, {"problem", request.problem_text}};
  const auto start = std::chrono::steady_clock::now();
  httplib::Result res = client.Post(ep.path, form);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  if (!res) {
    const httplib::Error err = res.error();
    const bool timed_out =
        err == httplib::Error::ConnectionTimeout ||
        ((err == httplib::Error::Read || err == httplib::Error::Write) &&
         elapsed >= request.timeout * 9 / 10);
    if (timed_out) {
      throw SolveError(SolveError::Kind::Timeout,
                       "no answer from " + request.endpoint + " within " +
                           std::to_string(request.timeout.count()) + " ms");
    }
    throw SolveError(SolveError::Kind::Transport,
                     "cannot reach " + request.endpoint + ": " + httplib::to_string(err));
  }
  if (res->status < 200 || res->status >= 300) {
    throw SolveError(SolveError::Kind::HttpStatus,
                     request.endpoint + " answered HTTP " + std::to_string(res->status),
                     res->status);
  }
  return parse_solve_response(res->body);
}

}  // namespace planim::service
