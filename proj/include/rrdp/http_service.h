// Copyright 2026 The RRDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RRDP_HTTP_SERVICE_H_
#define RRDP_HTTP_SERVICE_H_

// Stateless JSON-over-HTTP front end. Each operation is POST /<operation>;
// response bodies are exactly what Dispatch() returns.

#include <memory>
#include <string>
#include <string_view>

#include "httplib.h"
#include "rrdp/service.h"

namespace rrdp {

inline constexpr std::size_t kMaxRequestBytes = 1 << 20;

struct HttpOptions {
  DispatchOptions dispatch;
  std::string cors_origin = "*";
  std::string static_dir;  // served at / when non-empty
  std::string openapi_document;
};

class HttpService {
 public:
  explicit HttpService(HttpOptions options = {}) : options_(std::move(options)) { Install(); }

  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Binds to an OS-assigned port; returns it, or -1 on failure.
  int BindToAnyPort(const std::string& host) { return server_.bind_to_any_port(host); }
  bool Bind(const std::string& host, int port) { return server_.bind_to_port(host, port); }
  bool ListenAfterBind() { return server_.listen_after_bind(); }
  bool Listen(const std::string& host, int port) { return server_.listen(host, port); }
  void Stop() { server_.stop(); }
  void WaitUntilReady() { server_.wait_until_ready(); }
  bool is_running() const { return server_.is_running(); }

 private:
  void Install() {
    server_.set_payload_max_length(kMaxRequestBytes);
    const std::string origin = options_.cors_origin;
    server_.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
    server_.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    server_.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("ok", "text/plain");
    });
    if (!options_.openapi_document.empty()) {
      server_.Get("/openapi.json", [this](const httplib::Request&, httplib::Response& res) {
        res.set_content(options_.openapi_document, "application/json");
      });
    }
    for (std::string_view op : kOperations) {
      const std::string name(op);
      server_.Post("/" + name, [this, name](const httplib::Request& req, httplib::Response& res) {
        Json request;
        ServiceResult result;
        try {
          request = req.body.empty() ? Json::object() : Json::parse(req.body);
          result = Dispatch(name, request, options_.dispatch);
        } catch (const Json::parse_error& e) {
          result.status = 400;
          result.body = service::ErrorBody("bad_request", std::string("malformed JSON: ") + e.what());
          result.body["schema_version"] = kSchemaVersion;
          result.body["operation"] = name;
        }
        res.status = result.status;
        res.set_content(result.body.dump(), "application/json");
      });
    }
    server_.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (!res.body.empty()) return;
      Json body = service::ErrorBody(res.status == 413 ? "payload_too_large" : "not_found",
                                     res.status == 413 ? "request exceeds 1 MiB" : "no such endpoint");
      body["schema_version"] = kSchemaVersion;
      res.set_content(body.dump(), "application/json");
    });
    if (!options_.static_dir.empty()) server_.set_mount_point("/", options_.static_dir);
  }

  HttpOptions options_;
  httplib::Server server_;
};

}  // namespace rrdp

#endif  // RRDP_HTTP_SERVICE_H_
