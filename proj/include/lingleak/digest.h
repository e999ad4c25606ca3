/*
 * Copyright 2026 The LingLeak Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LINGLEAK_DIGEST_H_
#define LINGLEAK_DIGEST_H_

#include <memory>
#include <string>
#include <string_view>

namespace lingleak {

// Incremental SHA-256. Hex output is lowercase.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  Sha256& Update(std::string_view bytes);
  // Length-prefixed field, so that ("ab","c") and ("a","bc") differ.
  Sha256& UpdateField(std::string_view bytes);
  std::string HexDigest();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::string Sha256Hex(std::string_view bytes);

}  // namespace lingleak

#endif  // LINGLEAK_DIGEST_H_
