// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EOS_SRC_FILE_UTIL_HPP_
#define EOS_SRC_FILE_UTIL_HPP_

#include <filesystem>
#include <string>
#include <string_view>

namespace eos::detail {

// Writes to a sibling temp file and renames over path. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace eos::detail

#endif  // EOS_SRC_FILE_UTIL_HPP_
