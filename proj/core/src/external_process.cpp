/*
 * Copyright 2026 The poda Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "external_process.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "poda/error.hpp"

namespace poda {
namespace {

int remaining_ms(std::chrono::steady_clock::time_point deadline) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
      deadline - std::chrono::steady_clock::now());
  return left.count() < 0 ? 0 : static_cast<int>(left.count());
}

}  // namespace

ExternalProcess::ExternalProcess(std::string command,
                                 std::chrono::milliseconds timeout)
    : command_(std::move(command)), timeout_(timeout) {}

ExternalProcess::~ExternalProcess() {
  std::lock_guard lock(mutex_);
  shutdown_locked();
}

void ExternalProcess::spawn_locked() {
  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0) {
    throw OracleError(std::string("pipe() failed: ") + std::strerror(errno));
  }
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw OracleError(std::string("pipe() failed: ") + std::strerror(errno));
  }
  const pid_t pid = fork();
  if (pid < 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    throw OracleError(std::string("fork() failed: ") + std::strerror(errno));
  }
  if (pid == 0) {
    // Own process group, so a kill reaches whatever the shell spawned.
    setpgid(0, 0);
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);
  close(in_pipe[0]);
  close(out_pipe[1]);
  fcntl(in_pipe[1], F_SETFD, FD_CLOEXEC);
  fcntl(out_pipe[0], F_SETFD, FD_CLOEXEC);
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  read_buffer_.clear();
}

void ExternalProcess::shutdown_locked() {
  if (pid_ < 0) return;
  if (to_child_ >= 0) close(to_child_);
  to_child_ = -1;
  // Closing stdin asks a well-behaved oracle to exit; give it a moment.
  int status = 0;
  bool reaped = false;
  for (int attempt = 0; attempt < 50; ++attempt) {
    if (waitpid(pid_, &status, WNOHANG) == pid_) {
      reaped = true;
      break;
    }
    usleep(2000);
  }
  if (!reaped) {
    kill(-pid_, SIGKILL);
    waitpid(pid_, &status, 0);
  } else {
    kill(-pid_, SIGKILL);
  }
  if (from_child_ >= 0) close(from_child_);
  from_child_ = -1;
  pid_ = -1;
  read_buffer_.clear();
}

void ExternalProcess::write_all_locked(
    const std::string& payload, std::chrono::steady_clock::time_point deadline) {
  std::size_t written = 0;
  while (written < payload.size()) {
    pollfd pfd{to_child_, POLLOUT, 0};
    const int ready = poll(&pfd, 1, remaining_ms(deadline));
    if (ready == 0) throw OracleError("timed out writing to external oracle");
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw OracleError(std::string("poll() failed: ") + std::strerror(errno));
    }
    if (pfd.revents & (POLLERR | POLLHUP)) {
      throw OracleError("external oracle closed its input");
    }
    const ssize_t n =
        write(to_child_, payload.data() + written, payload.size() - written);
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      throw OracleError(std::string("write to external oracle failed: ") +
                        std::strerror(errno));
    }
    written += static_cast<std::size_t>(n);
  }
}

std::string ExternalProcess::read_line_locked(
    std::chrono::steady_clock::time_point deadline) {
  while (true) {
    const auto nl = read_buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = read_buffer_.substr(0, nl);
      read_buffer_.erase(0, nl + 1);
      return line;
    }
    pollfd pfd{from_child_, POLLIN, 0};
    const int ready = poll(&pfd, 1, remaining_ms(deadline));
    if (ready == 0) throw OracleError("timed out waiting for external oracle");
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw OracleError(std::string("poll() failed: ") + std::strerror(errno));
    }
    char buf[65536];
    const ssize_t n = read(from_child_, buf, sizeof(buf));
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      throw OracleError(std::string("read from external oracle failed: ") +
                        std::strerror(errno));
    }
    if (n == 0) throw OracleError("external oracle exited before responding");
    read_buffer_.append(buf, static_cast<std::size_t>(n));
  }
}

std::vector<double> ExternalProcess::query(const RowMatrix& rows,
                                           std::size_t begin, std::size_t end) {
  std::lock_guard lock(mutex_);
  // A child that dies mid-write must not take the engine down with SIGPIPE.
  static const bool sigpipe_ignored = [] {
    std::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)sigpipe_ignored;

  if (pid_ < 0) spawn_locked();
  const std::uint64_t id = next_id_++;

  nlohmann::json request;
  request["id"] = id;
  auto& inputs = request["inputs"] = nlohmann::json::array();
  for (std::size_t r = begin; r < end; ++r) {
    const auto row = rows.row(r);
    inputs.push_back(std::vector<double>(row.begin(), row.end()));
  }
  const auto deadline = std::chrono::steady_clock::now() + timeout_;
  try {
    write_all_locked(request.dump() + "\n", deadline);
    const std::string line = read_line_locked(deadline);
    nlohmann::json response;
    try {
      response = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw OracleError(std::string("malformed oracle response: ") + e.what());
    }
    if (!response.is_object() || !response.contains("id") ||
        !response.contains("outputs")) {
      throw OracleError("oracle response lacks id/outputs");
    }
    if (!response["id"].is_number_unsigned() ||
        response["id"].get<std::uint64_t>() != id) {
      throw OracleError("oracle response id does not match request " +
                        std::to_string(id));
    }
    const auto& outputs = response["outputs"];
    if (!outputs.is_array() || outputs.size() != end - begin) {
      throw OracleError("oracle returned " +
                        std::to_string(outputs.is_array() ? outputs.size() : 0) +
                        " outputs for " + std::to_string(end - begin) +
                        " inputs");
    }
    std::vector<double> out;
    out.reserve(outputs.size());
    for (const auto& v : outputs) {
      if (!v.is_number()) throw OracleError("non-numeric oracle output");
      out.push_back(v.get<double>());
    }
    return out;
  } catch (const OracleError&) {
    shutdown_locked();
    throw;
  }
}

}  // namespace poda
