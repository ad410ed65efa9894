// Copyright 2026 The Scholiview Authors
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

// Minimal UTF-8 helpers. Invalid byte sequences decode to U+FFFD so callers
// never have to deal with partial characters.

#ifndef SCHOLIVIEW_UTF8_H_
#define SCHOLIVIEW_UTF8_H_

#include <string>
#include <string_view>
#include <vector>

namespace scholiview::utf8 {

std::u32string decode(std::string_view text);
std::string encode(std::u32string_view cps);
void append(std::string &out, char32_t cp);

// Number of code points.
std::size_t length(std::string_view text);

// Lowercases ASCII, Latin-1 Supplement and the Latin Extended-A pairs, which
// covers German and English text.
char32_t to_lower(char32_t cp);
std::string to_lower(std::string_view text);

bool is_upper(char32_t cp);
bool is_space(char32_t cp);
bool is_punct(char32_t cp);
bool is_alnum(char32_t cp);

std::string trim(std::string_view text);

}  // namespace scholiview::utf8

#endif  // SCHOLIVIEW_UTF8_H_
