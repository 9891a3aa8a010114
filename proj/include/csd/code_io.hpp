// Copyright 2026 the csd authors
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

#ifndef CSD_CODE_IO_HPP
#define CSD_CODE_IO_HPP

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "csd/construct.hpp"

namespace csd {

/// Text format: header `n m k`, then m lines of 2n bits giving (x|z) rows,
/// then optional logical rows prefixed LX/LZ.
inline std::string code_to_text(const StabilizerCode &code) {
  std::ostringstream out;
  out << code.n << ' ' << code.checks.size() << ' ' << code.k() << "\n";
  for (const auto &chk : code.checks) {
    out << chk.xz().str() << "\n";
  }
  for (const auto &l : code.logical_x) {
    out << "LX " << l.xz().str() << "\n";
  }
  for (const auto &l : code.logical_z) {
    out << "LZ " << l.xz().str() << "\n";
  }
  return out.str();
}

inline StabilizerCode code_from_text(const std::string &text) {
  std::istringstream in(text);
  size_t n, m, k;
  if (!(in >> n >> m >> k)) {
    throw std::invalid_argument("code text must start with `n m k`");
  }
  StabilizerCode code;
  code.n = n;
  std::string tok;
  for (size_t r = 0; r < m; r++) {
    in >> tok;
    code.checks.push_back(PauliOperator::from_xz(BitVector::from_string(tok)));
  }
  while (in >> tok) {
    std::string row;
    in >> row;
    auto p = PauliOperator::from_xz(BitVector::from_string(row));
    if (tok == "LX") {
      code.logical_x.push_back(p);
    } else if (tok == "LZ") {
      code.logical_z.push_back(p);
    } else {
      throw std::invalid_argument("unexpected token in code text: " + tok);
    }
  }
  if (!code.logical_x.empty() && code.logical_x.size() != k) {
    throw std::invalid_argument("logical row count does not match header k");
  }
  return code;
}

inline nlohmann::json css_to_json(const CssCode &code) {
  nlohmann::json j;
  j["n"] = code.n;
  j["k"] = code.k();
  j["hx"] = code.hx.row_strings();
  j["hz"] = code.hz.row_strings();
  nlohmann::json lx = nlohmann::json::array(), lz = nlohmann::json::array();
  for (const auto &l : code.logical_x) {
    lx.push_back(l.x().str());
  }
  for (const auto &l : code.logical_z) {
    lz.push_back(l.z().str());
  }
  j["logical_x"] = lx;
  j["logical_z"] = lz;
  return j;
}

inline CssCode css_from_json(const nlohmann::json &j) {
  CssCode code;
  code.n = j.at("n").get<size_t>();
  std::vector<std::string> hx = j.at("hx").get<std::vector<std::string>>();
  std::vector<std::string> hz = j.at("hz").get<std::vector<std::string>>();
  code.hx = hx.empty() ? BitMatrix(0, code.n) : BitMatrix::from_rows(hx);
  code.hz = hz.empty() ? BitMatrix(0, code.n) : BitMatrix::from_rows(hz);
  for (const auto &s : j.at("logical_x").get<std::vector<std::string>>()) {
    code.logical_x.emplace_back(BitVector::from_string(s), BitVector(code.n));
  }
  for (const auto &s : j.at("logical_z").get<std::vector<std::string>>()) {
    code.logical_z.emplace_back(BitVector(code.n), BitVector::from_string(s));
  }
  return code;
}

/// CSD bundle with layout metadata so circuits can be rebuilt from the file.
inline nlohmann::json csd_to_json(const CsdCode &csd) {
  nlohmann::json j;
  j["code"] = css_to_json(csd.css);
  j["outer"] = css_to_json(csd.outer);
  j["outer_tau"] = csd.outer_tau.perm;
  j["n_blocks"] = csd.n_blocks;
  j["n_concat"] = csd.n_concat;
  return j;
}

inline CsdCode csd_from_json(const nlohmann::json &j) {
  CsdCode out;
  out.css = css_from_json(j.at("code"));
  out.outer = css_from_json(j.at("outer"));
  out.outer_tau.perm = j.at("outer_tau").get<std::vector<uint32_t>>();
  out.n_blocks = j.at("n_blocks").get<size_t>();
  out.n_concat = j.at("n_concat").get<size_t>();
  out.layout.pair_map.resize(out.outer.n);
  for (size_t i = 0; i < out.outer.n; i++) {
    if (i < out.outer_tau(i)) {
      uint32_t b = uint32_t(out.layout.blocks.size());
      out.layout.blocks.push_back(
          {uint32_t(4 * b), uint32_t(4 * b + 1), uint32_t(4 * b + 2), uint32_t(4 * b + 3)});
      out.layout.pair_map[i] = {b, 1};
      out.layout.pair_map[out.outer_tau(i)] = {b, 2};
    }
  }
  return out;
}

inline void write_file(const std::string &path, const std::string &content) {
  std::ofstream f(path);
  if (!f) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  f << content;
}

inline std::string read_file(const std::string &path) {
  std::ifstream f(path);
  if (!f) {
    throw std::runtime_error("cannot open for reading: " + path);
  }
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace csd

#endif
