// Copyright 2026 The Texkit Authors.
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

#include "httplib.h"
#include "texkit/service.h"

namespace texkit {

struct Server::Impl {
  ServiceConfig config;
  std::shared_ptr<const Analyzer> analyzer;
  httplib::Server http;
};

Server::Server(const ServiceConfig &config,
               std::shared_ptr<const Analyzer> analyzer)
    : impl_(std::make_unique<Impl>()) {
  impl_->config = config;
  impl_->analyzer = std::move(analyzer);
  httplib::Server &http = impl_->http;
  const int threads = config.threads;
  http.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
  http.set_payload_max_length(config.max_body_bytes);

  const Analyzer *a = impl_->analyzer.get();
  auto reply = [](httplib::Response &res, const Analyzer::HttpReply &r) {
    res.status = r.status;
    res.set_content(r.body, "application/json; charset=utf-8");
  };
  http.Post("/api/analyze",
            [a, reply](const httplib::Request &req, httplib::Response &res) {
              reply(res, a->AnalyzeBody(req.body));
            });
  http.Post("/api/match_text",
            [a, reply](const httplib::Request &req, httplib::Response &res) {
              reply(res, a->MatchBody(req.body));
            });
  http.Get("/healthz", [](const httplib::Request &, httplib::Response &res) {
    res.set_content("{\"status\":\"ok\"}", "application/json");
  });
}

Server::~Server() = default;

bool Server::Run() {
  return impl_->http.listen(impl_->config.host, impl_->config.port);
}

int Server::BindEphemeral() {
  return impl_->http.bind_to_any_port(impl_->config.host);
}

void Server::RunBound() { impl_->http.listen_after_bind(); }

void Server::Stop() { impl_->http.stop(); }

}  // namespace texkit
