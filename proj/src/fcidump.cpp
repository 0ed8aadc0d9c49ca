// Copyright 2026 The corelevel-qpe Authors
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

#include "clqpe/fcidump.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "clqpe/error.hpp"

namespace clqpe {

namespace {

constexpr double kDuplicateTolerance = 1e-10;

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

// Fortran writers sometimes emit 1.0D-03.
double parse_real(std::string token, int line) {
  for (auto& c : token) {
    if (c == 'D' || c == 'd') c = 'E';
  }
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0') throw ParseError("malformed number '" + token + "'", line);
  return v;
}

long parse_int(const std::string& token, int line) {
  char* end = nullptr;
  const long v = std::strtol(token.c_str(), &end, 10);
  if (end == token.c_str() || *end != '\0') throw ParseError("malformed integer '" + token + "'", line);
  return v;
}

struct Header {
  std::map<std::string, std::vector<std::string>> values;
  int end_line = 0;
};

Header read_header(std::istream& in, int& line_no) {
  Header header;
  std::string line;
  bool started = false;
  std::string current_key;
  while (std::getline(in, line)) {
    ++line_no;
    std::string text = line;
    if (!started) {
      const auto pos = upper(text).find("&FCI");
      if (pos == std::string::npos) {
        if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
        throw ParseError("expected '&FCI' namelist header", line_no);
      }
      started = true;
      text = text.substr(pos + 4);
    }
    bool finished = false;
    const auto up = upper(text);
    if (const auto end = up.find("&END"); end != std::string::npos) {
      text = text.substr(0, end);
      finished = true;
    } else if (const auto slash = text.find('/'); slash != std::string::npos) {
      text = text.substr(0, slash);
      finished = true;
    }
    for (auto& c : text) {
      if (c == ',' || c == '\t' || c == '\r') c = ' ';
    }
    // Split "KEY=VALUE" and bare values; bare values extend the previous key.
    std::istringstream tokens(text);
    std::string token;
    while (tokens >> token) {
      auto eq = token.find('=');
      while (eq != std::string::npos) {
        const std::string key = upper(token.substr(0, eq));
        if (key.empty()) throw ParseError("empty namelist key", line_no);
        current_key = key;
        header.values[current_key];
        token = token.substr(eq + 1);
        eq = token.find('=');
      }
      if (token.empty()) continue;
      if (current_key.empty()) throw ParseError("value '" + token + "' without a key", line_no);
      header.values[current_key].push_back(token);
    }
    if (finished) {
      header.end_line = line_no;
      return header;
    }
  }
  if (!started) throw ParseError("empty input, expected '&FCI' namelist header", line_no);
  throw ParseError("unterminated namelist (missing &END or /)", line_no);
}

int scalar_int(const Header& h, const std::string& key, int line, std::optional<int> fallback) {
  const auto it = h.values.find(key);
  if (it == h.values.end()) {
    if (fallback) return *fallback;
    throw ParseError("namelist is missing " + key, line);
  }
  if (it->second.size() != 1) throw ParseError(key + " expects a single value", line);
  return static_cast<int>(parse_int(it->second.front(), line));
}

using Key4 = std::array<int, 4>;

Key4 canonical_two_body(int p, int q, int r, int s) {
  if (p < q) std::swap(p, q);
  if (r < s) std::swap(r, s);
  if (std::make_pair(p, q) < std::make_pair(r, s)) {
    std::swap(p, r);
    std::swap(q, s);
  }
  return {p, q, r, s};
}

void format_real(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%24.16e", v);
  out << buf;
}

}  // namespace

void TwoBodyTensor::set_symmetric(int p, int q, int r, int s, double value) noexcept {
  for (const auto& [a, b, c, d] : {std::tuple{p, q, r, s}, std::tuple{q, p, r, s}, std::tuple{p, q, s, r},
                                   std::tuple{q, p, s, r}, std::tuple{r, s, p, q}, std::tuple{s, r, p, q},
                                   std::tuple{r, s, q, p}, std::tuple{s, r, q, p}}) {
    data_[index(a, b, c, d)] = value;
  }
}

IntegralSet parse_fcidump(std::istream& in) {
  int line_no = 0;
  const Header header = read_header(in, line_no);

  IntegralSet ints;
  ints.n_orbitals = scalar_int(header, "NORB", header.end_line, std::nullopt);
  ints.n_electrons = scalar_int(header, "NELEC", header.end_line, std::nullopt);
  ints.ms2 = scalar_int(header, "MS2", header.end_line, 0);
  ints.isym = scalar_int(header, "ISYM", header.end_line, 1);
  if (const auto uhf = header.values.find("UHF"); uhf != header.values.end()) {
    for (const auto& v : uhf->second) {
      if (upper(v).find('T') != std::string::npos)
        throw ParseError("unrestricted (UHF) integrals are not supported", header.end_line);
    }
  }
  const int n = ints.n_orbitals;
  if (n < 1 || n > 32) throw ParseError("NORB must lie in [1, 32]", header.end_line);
  if (ints.n_electrons < 0 || ints.n_electrons > 2 * n)
    throw ParseError("NELEC must lie in [0, 2*NORB]", header.end_line);
  if ((ints.n_electrons + ints.ms2) % 2 != 0 || std::abs(ints.ms2) > ints.n_electrons)
    throw ParseError("MS2 is inconsistent with NELEC", header.end_line);

  ints.orbital_irreps.assign(static_cast<std::size_t>(n), 1);
  if (const auto it = header.values.find("ORBSYM"); it != header.values.end()) {
    if (static_cast<int>(it->second.size()) != n)
      throw ParseError("ORBSYM needs NORB entries", header.end_line);
    for (int p = 0; p < n; ++p) {
      const long irrep = parse_int(it->second[static_cast<std::size_t>(p)], header.end_line);
      if (irrep < 1 || irrep > 8) throw ParseError("ORBSYM entries must lie in [1, 8]", header.end_line);
      ints.orbital_irreps[static_cast<std::size_t>(p)] = static_cast<int>(irrep);
    }
  }

  ints.one_body = Eigen::MatrixXd::Zero(n, n);
  ints.two_body = TwoBodyTensor(n);
  std::vector<double> orbital_energies(static_cast<std::size_t>(n), 0.0);
  bool saw_orbital_energy = false;
  std::map<Key4, double> seen;

  auto record = [&](const Key4& key, double value, int line) {
    const auto [it, inserted] = seen.emplace(key, value);
    if (!inserted && std::abs(it->second - value) > kDuplicateTolerance) {
      std::ostringstream msg;
      msg << "line " << line << ": inconsistent duplicate integral (" << key[0] << ' ' << key[1] << ' '
          << key[2] << ' ' << key[3] << "): " << it->second << " vs " << value;
      throw ConsistencyError(msg.str());
    }
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string value_token;
    if (!(fields >> value_token)) continue;
    std::array<long, 4> idx{};
    for (auto& i : idx) {
      std::string t;
      if (!(fields >> t)) throw ParseError("expected 'value i j k l'", line_no);
      i = parse_int(t, line_no);
    }
    std::string extra;
    if (fields >> extra) throw ParseError("trailing tokens after 'value i j k l'", line_no);
    const double value = parse_real(value_token, line_no);
    for (long i : idx) {
      if (i < 0 || i > n) {
        throw IndexError("line " + std::to_string(line_no) + ": orbital index " + std::to_string(i) +
                         " outside [1, " + std::to_string(n) + "]");
      }
    }
    const int i = static_cast<int>(idx[0]), j = static_cast<int>(idx[1]);
    const int k = static_cast<int>(idx[2]), l = static_cast<int>(idx[3]);
    if (i == 0 && j == 0 && k == 0 && l == 0) {
      record({0, 0, 0, 0}, value, line_no);
      ints.core_energy = value;
    } else if (i > 0 && j == 0 && k == 0 && l == 0) {
      record({-1, i, 0, 0}, value, line_no);
      orbital_energies[static_cast<std::size_t>(i - 1)] = value;
      saw_orbital_energy = true;
    } else if (i > 0 && j > 0 && k == 0 && l == 0) {
      record({-2, std::max(i, j), std::min(i, j), 0}, value, line_no);
      ints.one_body(i - 1, j - 1) = value;
      ints.one_body(j - 1, i - 1) = value;
    } else if (i > 0 && j > 0 && k > 0 && l > 0) {
      record(canonical_two_body(i, j, k, l), value, line_no);
      ints.two_body.set_symmetric(i - 1, j - 1, k - 1, l - 1, value);
    } else {
      throw ParseError("unsupported index pattern", line_no);
    }
  }
  if (saw_orbital_energy) ints.orbital_energies = std::move(orbital_energies);
  return ints;
}

IntegralSet parse_fcidump(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_fcidump(in);
}

IntegralSet read_fcidump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open FCIDUMP file '" + path + "'");
  return parse_fcidump(in);
}

void serialize_fcidump(const IntegralSet& ints, std::ostream& out) {
  const int n = ints.n_orbitals;
  out << " &FCI NORB=" << n << ",NELEC=" << ints.n_electrons << ",MS2=" << ints.ms2 << ",\n  ORBSYM=";
  for (int p = 0; p < n; ++p) out << ints.orbital_irreps[static_cast<std::size_t>(p)] << ',';
  out << "\n  ISYM=" << ints.isym << ",\n &END\n";
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q <= p; ++q) {
      for (int r = 0; r <= p; ++r) {
        for (int s = 0; s <= (r == p ? q : r); ++s) {
          const double v = ints.two_body(p, q, r, s);
          if (v == 0.0) continue;
          format_real(out, v);
          out << ' ' << p + 1 << ' ' << q + 1 << ' ' << r + 1 << ' ' << s + 1 << '\n';
        }
      }
    }
  }
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q <= p; ++q) {
      const double v = ints.one_body(p, q);
      if (v == 0.0) continue;
      format_real(out, v);
      out << ' ' << p + 1 << ' ' << q + 1 << " 0 0\n";
    }
  }
  if (ints.orbital_energies) {
    for (int p = 0; p < n; ++p) {
      format_real(out, (*ints.orbital_energies)[static_cast<std::size_t>(p)]);
      out << ' ' << p + 1 << " 0 0 0\n";
    }
  }
  format_real(out, ints.core_energy);
  out << " 0 0 0 0\n";
}

std::string serialize_fcidump(const IntegralSet& ints) {
  std::ostringstream out;
  serialize_fcidump(ints, out);
  return out.str();
}

OrbitalEnergies compute_orbital_energies(const IntegralSet& ints, int n_docc) {
  if (n_docc < 0 || n_docc > ints.n_orbitals)
    throw DomainError("n_docc=" + std::to_string(n_docc) + " outside [0, n_orbitals]");
  const auto& g = ints.two_body;
  OrbitalEnergies result;
  result.computed.resize(static_cast<std::size_t>(ints.n_orbitals));
  for (int p = 0; p < ints.n_orbitals; ++p) {
    double e = ints.one_body(p, p);
    for (int i = 0; i < n_docc; ++i) e += 2.0 * g(p, p, i, i) - g(p, i, i, p);
    result.computed[static_cast<std::size_t>(p)] = e;
  }
  if (ints.orbital_energies) {
    result.from_file = ints.orbital_energies;
    for (std::size_t p = 0; p < result.computed.size(); ++p)
      result.max_deviation = std::max(result.max_deviation, std::abs(result.computed[p] - (*result.from_file)[p]));
  }
  return result;
}

double hf_energy(const IntegralSet& ints, int n_docc) {
  if (n_docc < 0 || n_docc > ints.n_orbitals)
    throw DomainError("n_docc=" + std::to_string(n_docc) + " outside [0, n_orbitals]");
  double e = ints.core_energy;
  for (int i = 0; i < n_docc; ++i) {
    e += 2.0 * ints.one_body(i, i);
    for (int j = 0; j < n_docc; ++j) e += 2.0 * ints.two_body(i, i, j, j) - ints.two_body(i, j, j, i);
  }
  return e;
}

SymmetryReport check_symmetry(const IntegralSet& ints) {
  SymmetryReport report;
  const int n = ints.n_orbitals;
  report.max_one_body_asymmetry = (ints.one_body - ints.one_body.transpose()).cwiseAbs().maxCoeff();
  report.has_orbsym = std::any_of(ints.orbital_irreps.begin(), ints.orbital_irreps.end(), [](int s) { return s != 1; });
  auto sym = [&](int p) { return ints.orbital_irreps[static_cast<std::size_t>(p)] - 1; };
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (sym(p) != sym(q)) report.max_symmetry_breaking = std::max(report.max_symmetry_breaking, std::abs(ints.one_body(p, q)));
      for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
          if ((sym(p) ^ sym(q) ^ sym(r) ^ sym(s)) != 0)
            report.max_symmetry_breaking = std::max(report.max_symmetry_breaking, std::abs(ints.two_body(p, q, r, s)));
        }
      }
    }
  }
  return report;
}

std::string integral_checksum(const IntegralSet& ints) {
  const std::string text = serialize_fcidump(ints);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace clqpe
