// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EOS_TABLE_IO_HPP_
#define EOS_TABLE_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "eos/scenario.hpp"

namespace eos {

inline constexpr std::string_view kTableSchema = "eos.performance_table";
inline constexpr int kTableSchemaVersion = 1;

// JSON document {schema, version, horizon, satellites, requests,
// swath_reference_km, attempts, stereo_pairs}. Satellites carry their TLE
// lines so a table is self-contained.
std::string table_to_json(const PerformanceTable& table);
// Throws ParseError on malformed input or schema mismatch.
PerformanceTable table_from_json(std::string_view text);

void write_table(const std::filesystem::path& path, const PerformanceTable& table);
PerformanceTable read_table(const std::filesystem::path& path);

// Columnar binary cache, little-endian:
//   "EOSPTBL1"  magic (8 bytes)
//   u32         format version (1)
//   u64         metadata length, then metadata JSON (the table without
//               attempts and pairs, plus attempt_count and pair_count)
//   attempt columns, each attempt_count entries in order:
//     i32 request_id, satellite, strip_index, stereo_role, pass_id
//     i64 t_clock (microseconds since the Unix epoch)
//     f64 acq_duration, los.x, los.y, los.z, off_nadir, sun_elev,
//         cloud_cover, memory_mb, target.lat, target.lon, target.alt,
//         criteria[0..7]
//   pair columns: i32 first, i32 second, f64 convergence_deg
// Attempt ids are the row index.
std::string table_to_binary(const PerformanceTable& table);
PerformanceTable table_from_binary(std::string_view bytes);
void write_table_binary(const std::filesystem::path& path, const PerformanceTable& table);
PerformanceTable read_table_binary(const std::filesystem::path& path);

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
// fnv1a64 as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace eos

#endif  // EOS_TABLE_IO_HPP_
