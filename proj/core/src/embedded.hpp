// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EOS_SRC_EMBEDDED_HPP_
#define EOS_SRC_EMBEDDED_HPP_

#include <string_view>

namespace eos::embedded {
extern const std::string_view kPopulationGridCsv;
extern const std::string_view kLeafletJs;
extern const std::string_view kLeafletCss;
extern const std::string_view kBuiltinTles;
}  // namespace eos::embedded

#endif  // EOS_SRC_EMBEDDED_HPP_
