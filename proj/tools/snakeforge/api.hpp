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


#ifndef SNAKEFORGE_TOOLS_API_HPP_
#define SNAKEFORGE_TOOLS_API_HPP_

#include <memory>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "snakeforge/snakeforge.h"

namespace sfcli
{

using Json = nlohmann::ordered_json;

// A failed library call, carrying its status.
class ApiError : public std::runtime_error
{
public:
  ApiError(sf_status status, const std::string & message)
  : std::runtime_error(message), status_(status) {}

  sf_status status() const {return status_;}

private:
  sf_status status_;
};

inline void check(sf_status status)
{
  if (status != SF_OK) {
    throw ApiError(status, sf_last_error());
  }
}

// Takes ownership of a library string.
inline std::string take(char * text)
{
  std::unique_ptr<char, decltype(&sf_string_free)> guard(text, &sf_string_free);
  return text != nullptr ? std::string(text) : std::string();
}

// Runs a call that hands back a JSON document and parses it.
template<typename F>
Json fetch(F && call)
{
  char * out = nullptr;
  check(call(&out));
  return Json::parse(take(out));
}

struct AssemblyDeleter
{
  void operator()(sf_assembly * a) const {sf_assembly_free(a);}
};
using Assembly = std::unique_ptr<sf_assembly, AssemblyDeleter>;

inline Assembly load_assembly(const std::string & path)
{
  sf_assembly * raw = nullptr;
  check(sf_assembly_load_file(path.empty() ? nullptr : path.c_str(), &raw));
  return Assembly(raw);
}

inline double quantity(const std::string & text, const char * dimension)
{
  double si = 0.0;
  const sf_status status = sf_parse_quantity(text.c_str(), dimension, &si);
  if (status != SF_OK) {
    throw ApiError(status, std::string("'") + text + "': " + sf_last_error());
  }
  return si;
}

}  // namespace sfcli

#endif  // SNAKEFORGE_TOOLS_API_HPP_
