// Copyright 2026 The MathQA Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mathqa/http_server.h"

#include "httplib.h"

namespace mathqa {

using json = nlohmann::json;

namespace {

constexpr const char *kJsonType = "application/json; charset=utf-8";

void Reply(httplib::Response &res, int code, const json &body) {
  res.status = code;
  res.set_content(body.dump(), kJsonType);
}

void BadRequest(httplib::Response &res, const std::string &message) {
  Reply(res, 400, json{{"status", kStatusInvalidRequest}, {"message", message}});
}

// Parses the body as a JSON object, answering 400 on failure.
std::optional<json> Body(const httplib::Request &req, httplib::Response &res) {
  json body = json::parse(req.body, nullptr, /*allow_exceptions=*/false);
  if (body.is_discarded() || !body.is_object()) {
    BadRequest(res, "request body must be a JSON object");
    return std::nullopt;
  }
  return body;
}

}  // namespace

struct HttpServer::Impl {
  explicit Impl(const QaService &s) : service(s) {}

  const QaService &service;
  httplib::Server server;
};

HttpServer::HttpServer(const QaService &service) : impl_(std::make_unique<Impl>(service)) {
  httplib::Server &server = impl_->server;
  const QaService &qa = service;

  server.Get("/healthz", [&qa](const httplib::Request &, httplib::Response &res) {
    Reply(res, 200, json{{"status", kStatusOk}, {"items", qa.store().size()}});
  });

  server.Post("/api/v1/question", [&qa](const httplib::Request &req, httplib::Response &res) {
    std::optional<json> body = Body(req, res);
    if (!body) return;
    auto text = body->find("text");
    if (text == body->end() || !text->is_string()) return BadRequest(res, "text is required");
    std::string lang = "en";
    if (auto l = body->find("lang"); l != body->end() && !l->is_null()) {
      if (!l->is_string()) return BadRequest(res, "lang must be a string");
      lang = l->get<std::string>();
    }
    try {
      Reply(res, 200, qa.Ask(text->get<std::string>(), lang));
    } catch (const InvalidRequest &e) {
      BadRequest(res, e.what());
    }
  });

  server.Post("/api/v1/calculate", [&qa](const httplib::Request &req, httplib::Response &res) {
    std::optional<json> body = Body(req, res);
    if (!body) return;
    try {
      Reply(res, 200, qa.Calculate(*body));
    } catch (const InvalidRequest &e) {
      BadRequest(res, e.what());
    }
  });

  server.Get("/api/v1/items", [&qa](const httplib::Request &req, httplib::Response &res) {
    if (!req.has_param("label")) return BadRequest(res, "label is required");
    std::string lang = req.has_param("lang") ? req.get_param_value("lang") : "en";
    Reply(res, 200, qa.Items(req.get_param_value("label"), lang));
  });

  server.set_exception_handler(
      [](const httplib::Request &, httplib::Response &res, std::exception_ptr ep) {
        std::string message = "internal error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception &e) {
          message = e.what();
        } catch (...) {
        }
        Reply(res, 500, json{{"status", "error"}, {"message", message}});
      });
}

HttpServer::~HttpServer() { Stop(); }

int HttpServer::Bind(const std::string &host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::Serve() { return impl_->server.listen_after_bind(); }

void HttpServer::Stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void HttpServer::WaitUntilReady() const { impl_->server.wait_until_ready(); }

}  // namespace mathqa
