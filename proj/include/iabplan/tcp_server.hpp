// Copyright 2026 The iabplan Authors
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

// TCP transport for the environment protocol (POSIX sockets). Every
// connection gets its own Session and thread.

#pragma once

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstdint>
#include <memory>
#include <string>
#include <system_error>
#include <thread>
#include <vector>

#include "iabplan/protocol.hpp"

namespace iabplan::protocol {

class TcpServer {
 public:
  // Binds immediately; port 0 picks an ephemeral port. Throws
  // std::system_error when the port cannot be bound.
  TcpServer(std::shared_ptr<const Instance> inst, std::uint16_t port, EnvConfig cfg = {},
            bool loopback_only = true)
      : inst_(std::move(inst)), cfg_(cfg) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0) throw std::system_error(errno, std::generic_category(), "socket");
    const int yes = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    addr.sin_addr.s_addr = htonl(loopback_only ? INADDR_LOOPBACK : INADDR_ANY);
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
      const int err = errno;
      ::close(fd_);
      throw std::system_error(err, std::generic_category(),
                              "bind to port " + std::to_string(port));
    }
    if (::listen(fd_, 16) < 0) {
      const int err = errno;
      ::close(fd_);
      throw std::system_error(err, std::generic_category(), "listen");
    }
    socklen_t len = sizeof(addr);
    ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
  }

  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  ~TcpServer() {
    stop();
    for (auto& t : workers_)
      if (t.joinable()) t.join();
  }

  std::uint16_t port() const { return port_; }

  // Accepts connections until `max_sessions` have been served (0 = no
  // limit) or stop() is called. Returns after all sessions finish.
  void serve(std::size_t max_sessions = 0) {
    std::size_t accepted = 0;
    while (!stopping_ && (max_sessions == 0 || accepted < max_sessions)) {
      const int client = ::accept(fd_, nullptr, nullptr);
      if (client < 0) {
        if (errno == EINTR) continue;
        break;
      }
      ++accepted;
      workers_.emplace_back([this, client] { run_session(client); });
    }
    for (auto& t : workers_)
      if (t.joinable()) t.join();
    workers_.clear();
  }

  void stop() {
    if (stopping_.exchange(true)) return;
    ::shutdown(fd_, SHUT_RDWR);
    ::close(fd_);
  }

 private:
  static bool send_all(int fd, const std::string& data) {
    std::size_t sent = 0;
    while (sent < data.size()) {
      const auto n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
      if (n <= 0) return false;
      sent += static_cast<std::size_t>(n);
    }
    return true;
  }

  void run_session(int client) {
    Session session(inst_, cfg_);
    if (send_all(client, hello(*inst_).dump() + "\n")) {
      std::string buffer;
      char chunk[4096];
      bool open = true;
      while (open && !session.closed()) {
        const auto n = ::recv(client, chunk, sizeof(chunk), 0);
        if (n <= 0) break;
        buffer.append(chunk, static_cast<std::size_t>(n));
        std::size_t pos;
        while (!session.closed() && (pos = buffer.find('\n')) != std::string::npos) {
          std::string line = buffer.substr(0, pos);
          buffer.erase(0, pos + 1);
          if (!line.empty() && line.back() == '\r') line.pop_back();
          if (line.empty()) continue;
          if (!send_all(client, session.handle(line) + "\n")) {
            open = false;
            break;
          }
        }
      }
    }
    ::close(client);
  }

  std::shared_ptr<const Instance> inst_;
  EnvConfig cfg_;
  int fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::vector<std::thread> workers_;
};

}  // namespace iabplan::protocol
