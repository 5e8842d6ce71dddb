#include <httplib.h>

#include <iostream>

#include "blockade/service.hpp"

namespace blockade {

struct Server::Impl {
  ServeOptions options;
  httplib::Server http;
};

Server::Server(ServeOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
  auto& http = impl_->http;
  const std::optional<long> budget = impl_->options.time_budget_ms;
  const char* ops[] = {"delaunay", "blocks", "construct", "certify-lb", "certify-epsilon", "solve", "probe"};
  for (const std::string prefix : {"/api/", "/api/v1/"}) {
    for (const std::string op : ops) {
      http.Post(prefix + op, [op, budget](const httplib::Request& req, httplib::Response& res) {
        const ApiResponse r = handle_body(op, req.body, Deadline(budget));
        res.status = r.status;
        res.set_content(dump(r.body), "application/json");
      });
    }
    http.Get(prefix + "health", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(dump(handle("health", Json::object()).body), "application/json");
    });
  }
  if (impl_->options.static_dir && !http.set_mount_point("/", *impl_->options.static_dir)) {
    throw Error("BadStaticDir", "cannot serve " + *impl_->options.static_dir);
  }
}

Server::~Server() = default;

int Server::bind() {
  auto& o = impl_->options;
  if (o.port == 0) {
    o.port = impl_->http.bind_to_any_port(o.host);
    if (o.port < 0) throw Error("PortUnavailable", "cannot bind " + o.host);
  } else if (!impl_->http.bind_to_port(o.host, o.port)) {
    throw Error("PortUnavailable", "cannot bind port " + std::to_string(o.port));
  }
  return o.port;
}

void Server::listen() { impl_->http.listen_after_bind(); }

void Server::stop() { impl_->http.stop(); }

void serve(const ServeOptions& options) {
  Server server(options);
  const int port = server.bind();
  std::cerr << "listening on http://" << options.host << ':' << port << '\n';
  server.listen();
}

}  // namespace blockade
