#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "livingdoc/errors.hpp"

// cpp-httplib; keep the dependency contained to this header.
#include <httplib.h>

namespace livingdoc::http {

struct Response {
  int status = 0;
  std::string body;
  std::map<std::string, std::string> headers;  // lowercase field names

  std::string header(const std::string& name) const {
    auto it = headers.find(name);
    return it == headers.end() ? std::string() : it->second;
  }
};

struct Request {
  std::string method = "GET";
  std::string url;
  std::string body;
  std::string content_type;
  std::map<std::string, std::string> headers;
};

struct UrlParts {
  std::string scheme;
  std::string host;
  int port = 0;
  std::string target;  // path + query, always starts with '/'
};

inline UrlParts parse_url(const std::string& url) {
  UrlParts p;
  size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw Error(ErrorKind::fetch_failed, "not an absolute URL: " + url);
  p.scheme = url.substr(0, scheme_end);
  size_t host_begin = scheme_end + 3;
  size_t path_begin = url.find('/', host_begin);
  std::string hostport = url.substr(host_begin, path_begin == std::string::npos
                                                    ? std::string::npos
                                                    : path_begin - host_begin);
  p.target = path_begin == std::string::npos ? "/" : url.substr(path_begin);
  size_t colon = hostport.rfind(':');
  if (colon != std::string::npos && colon + 1 < hostport.size() &&
      hostport.find_first_not_of("0123456789", colon + 1) == std::string::npos) {
    p.host = hostport.substr(0, colon);
    p.port = std::stoi(hostport.substr(colon + 1));
  } else {
    p.host = hostport;
    p.port = (p.scheme == "https") ? 443 : 80;
  }
  if (p.host.empty()) throw Error(ErrorKind::fetch_failed, "URL has no host: " + url);
  return p;
}

/// Transport seam: production uses cpp-httplib; tests substitute scripted or
/// counting transports, and `--offline` substitutes a transport that refuses.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual Response send(const Request& req) = 0;
};

class HttplibTransport final : public Transport {
 public:
  explicit HttplibTransport(int timeout_seconds = 30) : timeout_(timeout_seconds) {}

  Response send(const Request& req) override {
    UrlParts parts = parse_url(req.url);
    httplib::Client cli(parts.scheme + "://" + parts.host + ":" + std::to_string(parts.port));
    cli.set_connection_timeout(timeout_, 0);
    cli.set_read_timeout(timeout_, 0);
    cli.set_follow_location(true);
    httplib::Headers headers;
    for (const auto& [k, v] : req.headers) headers.emplace(k, v);
    httplib::Result result =
        req.method == "POST"
            ? cli.Post(parts.target, headers, req.body, req.content_type)
            : cli.Get(parts.target, headers);
    if (!result)
      throw Error(ErrorKind::fetch_failed,
                  "connection to " + parts.host + " failed: " + httplib::to_string(result.error()));
    Response out;
    out.status = result->status;
    out.body = result->body;
    for (const auto& [k, v] : result->headers) {
      std::string key = k;
      for (auto& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      out.headers[key] = v;
    }
    return out;
  }

 private:
  int timeout_;
};

/// Refuses every request. Installed for `--offline` builds so any code path
/// that would touch the network fails loudly; also counts attempts so tests
/// can assert zero.
class OfflineTransport final : public Transport {
 public:
  Response send(const Request& req) override {
    ++attempts_;
    throw Error(ErrorKind::offline_miss, "network disabled (offline), refusing " + req.url);
  }
  int attempts() const { return attempts_.load(); }

 private:
  std::atomic<int> attempts_{0};
};

/// Decorator counting requests that reach the wrapped transport.
class CountingTransport final : public Transport {
 public:
  explicit CountingTransport(Transport& inner) : inner_(inner) {}
  Response send(const Request& req) override {
    ++count_;
    return inner_.send(req);
  }
  int count() const { return count_.load(); }
  void reset() { count_ = 0; }

 private:
  Transport& inner_;
  std::atomic<int> count_{0};
};

struct ClientOptions {
  std::string user_agent = "livingdoc/0.1";
  int politeness_delay_ms = 200;  // minimum spacing between requests per host
  int max_attempts = 3;           // on 5xx / transport error; 4xx is terminal
  int backoff_base_ms = 250;      // doubled per retry
};

/// Shared HTTP client: identifying User-Agent, per-host politeness spacing,
/// bounded retries with exponential backoff. Thread-safe; resolver workers
/// share one instance.
class Client {
 public:
  Client(Transport& transport, ClientOptions options = {})
      : transport_(transport), options_(std::move(options)) {}

  Response get(const std::string& url,
               const std::map<std::string, std::string>& headers = {}) {
    Request req;
    req.method = "GET";
    req.url = url;
    req.headers = headers;
    return send(req);
  }

  Response post(const std::string& url, std::string body, std::string content_type) {
    Request req;
    req.method = "POST";
    req.url = url;
    req.body = std::move(body);
    req.content_type = std::move(content_type);
    return send(req);
  }

  Response send(Request req) {
    req.headers.emplace("User-Agent", options_.user_agent);
    const std::string host = parse_url(req.url).host;
    int attempt = 0;
    while (true) {
      ++attempt;
      be_polite(host);
      try {
        Response res = transport_.send(req);
        if (res.status >= 500 && attempt < options_.max_attempts) {
          backoff(attempt);
          continue;
        }
        return res;
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::offline_miss) throw;  // offline is not retryable
        if (attempt >= options_.max_attempts) throw;
        backoff(attempt);
      }
    }
  }

  const ClientOptions& options() const { return options_; }

 private:
  void be_polite(const std::string& host) {
    if (options_.politeness_delay_ms <= 0) return;
    std::chrono::steady_clock::time_point wait_until;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto now = std::chrono::steady_clock::now();
      auto& last = last_request_[host];
      auto earliest = last + std::chrono::milliseconds(options_.politeness_delay_ms);
      wait_until = std::max(now, earliest);
      last = wait_until;
    }
    std::this_thread::sleep_until(wait_until);
  }

  void backoff(int attempt) {
    if (options_.backoff_base_ms <= 0) return;
    std::this_thread::sleep_for(
        std::chrono::milliseconds(options_.backoff_base_ms * (1 << (attempt - 1))));
  }

  Transport& transport_;
  ClientOptions options_;
  std::mutex mutex_;
  std::map<std::string, std::chrono::steady_clock::time_point> last_request_;
};

}  // namespace livingdoc::http
