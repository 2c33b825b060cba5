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

#ifndef MATHQA_HTTP_SERVER_H_
#define MATHQA_HTTP_SERVER_H_

#include <memory>
#include <string>

#include "mathqa/service.h"

namespace mathqa {

// JSON API over a QaService:
//
//   POST /api/v1/question   {text, lang}                       -> answer payload
//   POST /api/v1/calculate  {qid?, property?, formula?, bindings} -> result payload
//   GET  /api/v1/items?label=...&lang=...                      -> {items}
//   GET  /healthz
//
// Domain outcomes (not found, unparseable, domain errors) are 200 responses
// with a status field; malformed requests are 400 with {status, message}.
class HttpServer {
 public:
  explicit HttpServer(const QaService &service);
  ~HttpServer();

  HttpServer(const HttpServer &) = delete;
  HttpServer &operator=(const HttpServer &) = delete;

  // Binds; port 0 picks a free port. Returns the bound port, or -1.
  int Bind(const std::string &host, int port);
  // Serves until Stop(). Returns false if the server failed.
  bool Serve();
  void Stop();
  void WaitUntilReady() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace mathqa

#endif  // MATHQA_HTTP_SERVER_H_
