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

#ifndef PODA_SRC_EXTERNAL_PROCESS_HPP_
#define PODA_SRC_EXTERNAL_PROCESS_HPP_

#include <chrono>
#include <cstdint>
#include <mutex>
#include <string>
#include <sys/types.h>
#include <vector>

#include "poda/oracle.hpp"

namespace poda {

// Child process speaking the newline-delimited JSON batch protocol:
//   request  {"id":n,"inputs":[[...],...]}
//   response {"id":n,"outputs":[...]}
// One request is in flight at a time. The child is spawned lazily on the
// first request and terminated on destruction.
class ExternalProcess {
 public:
  ExternalProcess(std::string command, std::chrono::milliseconds timeout);
  ~ExternalProcess();

  ExternalProcess(const ExternalProcess&) = delete;
  ExternalProcess& operator=(const ExternalProcess&) = delete;

  // Throws OracleError on spawn failure, protocol violation, child exit or
  // timeout. After a failure the child is killed and respawned on the next
  // request.
  std::vector<double> query(const RowMatrix& rows, std::size_t begin,
                            std::size_t end);

 private:
  void spawn_locked();
  void shutdown_locked();
  void write_all_locked(const std::string& payload,
                        std::chrono::steady_clock::time_point deadline);
  std::string read_line_locked(std::chrono::steady_clock::time_point deadline);

  std::string command_;
  std::chrono::milliseconds timeout_;
  std::mutex mutex_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string read_buffer_;
  std::uint64_t next_id_ = 1;
};

}  // namespace poda

#endif  // PODA_SRC_EXTERNAL_PROCESS_HPP_
