// Copyright 2026 The Snakeforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SNAKEFORGE_CORE_ERROR_HPP_
#define SNAKEFORGE_CORE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace snakeforge
{

// Mirrors sf_status in the C header; keep the numeric values in sync.
enum class ErrorCode : int
{
  kInvalidArgument = 1,
  kParse = 2,
  kValidation = 3,
  kInfeasible = 4,
  kOutOfRange = 5,
  kIo = 6,
  kProtocol = 7,
  kInternal = 8,
};

const char * error_code_name(ErrorCode code);

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string & message)
  : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept {return code_;}

private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string & message)
{
  if (!condition) {
    throw Error(code, message);
  }
}

}  // namespace snakeforge

#endif  // SNAKEFORGE_CORE_ERROR_HPP_
