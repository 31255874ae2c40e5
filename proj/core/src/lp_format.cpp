// Copyright 2026 The EOS Scheduling Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "eos/errors.hpp"
#include "eos/problem.hpp"
#include "file_util.hpp"

namespace eos {
namespace {

constexpr std::size_t kTermsPerLine = 8;

std::string number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool parse_number(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

int parse_variable(std::string_view s) {
  int col = -1;
  if (s.size() < 2 || s.front() != 'x') throw ParseError("LP: bad variable '" + std::string(s) + "'");
  auto res = std::from_chars(s.data() + 1, s.data() + s.size(), col);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || col < 0) {
    throw ParseError("LP: bad variable '" + std::string(s) + "'");
  }
  return col;
}

void write_terms(std::ostringstream& out, const std::vector<LpTerm>& terms) {
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (k > 0 && k % kTermsPerLine == 0) out << "\n   ";
    const double c = terms[k].coef;
    if (k == 0) {
      out << ' ' << number(c);
    } else {
      out << (std::signbit(c) ? " - " : " + ") << number(std::abs(c));
    }
    out << " x" << terms[k].column;
  }
}

// Parses "[sign] coef var ..." up to an optional relation.
std::vector<LpTerm> parse_terms(const std::vector<std::string>& tok, std::size_t& i) {
  std::vector<LpTerm> terms;
  double sign = 1.0;
  while (i < tok.size()) {
    const std::string& t = tok[i];
    if (t == "<=" || t == ">=" || t == "=" || t == "=<" || t == "=>") break;
    if (t == "+" || t == "-") {
      sign = t == "-" ? -1.0 : 1.0;
      ++i;
      continue;
    }
    double coef = 1.0;
    if (parse_number(t, coef)) {
      ++i;
      if (i >= tok.size() || tok[i] == "<=" || tok[i] == ">=" || tok[i] == "=") {
        if (coef != 0.0) throw ParseError("LP: constant terms are not supported");
        break;
      }
    }
    terms.push_back({sign * coef, parse_variable(tok[i])});
    sign = 1.0;
    ++i;
  }
  return terms;
}

}  // namespace

LpModel to_lp_model(const ProblemInstance& inst) {
  LpModel m;
  m.n = inst.n;
  m.objective = inst.scores;
  auto ones = [](const std::vector<int>& cols) {
    std::vector<LpTerm> t;
    for (int c : cols) t.push_back({1.0, c});
    return t;
  };
  for (std::size_t k = 0; k < inst.g_rows.size(); ++k) {
    m.rows.push_back({"g" + std::to_string(k), ones(inst.g_rows[k].columns), "<=",
                      static_cast<double>(inst.g_rows[k].bound)});
  }
  for (std::size_t k = 0; k < inst.b_rows.size(); ++k) {
    m.rows.push_back({"b" + std::to_string(k), ones(inst.b_rows[k].columns), "<=",
                      static_cast<double>(inst.b_rows[k].cap)});
  }
  for (std::size_t k = 0; k < inst.a_rows.size(); ++k) {
    m.rows.push_back({"a" + std::to_string(k), {{1.0, inst.a_rows[k].plus}, {-1.0, inst.a_rows[k].minus}}, "=", 0.0});
  }
  for (std::size_t k = 0; k < inst.m_rows.size(); ++k) {
    const auto& r = inst.m_rows[k];
    LpRow row{"m" + std::to_string(k), {}, "<=", r.cap};
    for (std::size_t i = 0; i < r.columns.size(); ++i) row.terms.push_back({r.memory[i], r.columns[i]});
    m.rows.push_back(std::move(row));
  }
  return m;
}

std::string write_lp(const LpModel& model) {
  std::ostringstream out;
  out << "\\ eos binary program, " << model.n << " variables, " << model.rows.size() << " constraints\n";
  out << "Maximize\n obj:";
  std::vector<LpTerm> obj;
  for (int c = 0; c < model.n; ++c) obj.push_back({model.objective[static_cast<std::size_t>(c)], c});
  if (obj.empty()) {
    out << " 0";
  } else {
    write_terms(out, obj);
  }
  out << "\nSubject To\n";
  for (const auto& r : model.rows) {
    out << ' ' << r.name << ':';
    write_terms(out, r.terms);
    out << ' ' << r.sense << ' ' << number(r.rhs) << '\n';
  }
  out << "Binaries\n";
  for (int c = 0; c < model.n; ++c) {
    out << " x" << c;
    if (c % 16 == 15 || c + 1 == model.n) out << '\n';
  }
  out << "End\n";
  return out.str();
}

LpModel read_lp(std::string_view text) {
  enum class Section { kNone, kObjective, kConstraints, kBinaries, kEnd };
  Section section = Section::kNone;
  std::vector<std::string> obj_tok;
  std::vector<std::string> con_tok;
  std::vector<std::string> bin_tok;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto cut = line.find('\\'); cut != std::string::npos) line.resize(cut);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    std::string lower;
    for (char ch : first) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (lower == "maximize" || lower == "maximise" || lower == "max") {
      section = Section::kObjective;
      continue;
    }
    if (lower == "subject" || lower == "st" || lower == "s.t.") {
      section = Section::kConstraints;
      continue;
    }
    if (lower == "binaries" || lower == "binary" || lower == "bin") {
      section = Section::kBinaries;
      continue;
    }
    if (lower == "end") {
      section = Section::kEnd;
      continue;
    }
    if (lower == "minimize" || lower == "minimise" || lower == "min" || lower == "bounds" || lower == "general" ||
        lower == "generals") {
      throw ParseError("LP: unsupported section '" + first + "'");
    }
    std::vector<std::string>* dst = nullptr;
    switch (section) {
      case Section::kObjective: dst = &obj_tok; break;
      case Section::kConstraints: dst = &con_tok; break;
      case Section::kBinaries: dst = &bin_tok; break;
      default: throw ParseError("LP: content outside a section: " + line);
    }
    // Split "name:" labels glued to the first term.
    std::istringstream ts(line);
    std::string tok;
    while (ts >> tok) {
      auto colon = tok.find(':');
      if (colon != std::string::npos && colon + 1 < tok.size()) {
        dst->push_back(tok.substr(0, colon + 1));
        dst->push_back(tok.substr(colon + 1));
      } else {
        dst->push_back(tok);
      }
    }
  }
  if (section != Section::kEnd) throw ParseError("LP: missing End");

  LpModel m;
  std::size_t i = 0;
  if (!obj_tok.empty() && obj_tok.front().back() == ':') ++i;
  const auto obj = parse_terms(obj_tok, i);
  if (i != obj_tok.size()) throw ParseError("LP: trailing tokens in objective");
  int max_col = -1;
  for (const auto& t : obj) max_col = std::max(max_col, t.column);
  for (const auto& b : bin_tok) max_col = std::max(max_col, parse_variable(b));

  i = 0;
  while (i < con_tok.size()) {
    LpRow row;
    if (con_tok[i].back() != ':') throw ParseError("LP: constraint without a name near '" + con_tok[i] + "'");
    row.name = con_tok[i].substr(0, con_tok[i].size() - 1);
    ++i;
    row.terms = parse_terms(con_tok, i);
    if (i + 1 >= con_tok.size()) throw ParseError("LP: constraint '" + row.name + "' lacks a relation");
    row.sense = con_tok[i];
    if (row.sense == "=<") row.sense = "<=";
    if (row.sense == "=>") row.sense = ">=";
    if (!parse_number(con_tok[i + 1], row.rhs)) throw ParseError("LP: bad right-hand side in '" + row.name + "'");
    i += 2;
    for (const auto& t : row.terms) max_col = std::max(max_col, t.column);
    m.rows.push_back(std::move(row));
  }
  m.n = max_col + 1;
  m.objective.assign(static_cast<std::size_t>(m.n), 0.0);
  for (const auto& t : obj) m.objective[static_cast<std::size_t>(t.column)] += t.coef;
  return m;
}

void export_lp(const ProblemInstance& instance, const std::filesystem::path& path) {
  detail::write_file_atomic(path, write_lp(to_lp_model(instance)));
}

}  // namespace eos
