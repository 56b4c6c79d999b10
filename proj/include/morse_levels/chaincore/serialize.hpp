#pragma once

// Plain-text complex format:
//
//   # morse-levels complex
//   cells[0] = 1
//   cells[2] = 1
//   label[2:0] = "top"
//   boundary[2:0] = [(1:0, 2)]
//
// `cells[d]` lines give the number of d-cells, `boundary[d:i]` lists the
// (face, coefficient) pairs of cell d:i, `label[d:i]` is optional. Cells
// without a boundary line have zero boundary. Blank lines and lines
// starting with '#' are ignored.

#include "morse_levels/chaincore/cell_complex.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace morse_levels {

namespace detail {

inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    if (ch == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(ch);
  }
  return out + "\"";
}

class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line_no) : s_(text), line_(line_no) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("complex text, line " + std::to_string(line_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  void expect(char ch) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }
  bool accept(char ch) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  long long integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_ || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(s_[start]))))
      fail("expected an integer");
    try {
      return std::stoll(std::string(s_.substr(start, pos_ - start)));
    } catch (const std::exception&) {
      fail("integer out of range");
    }
  }
  CellRef cell() {
    long long d = integer();
    expect(':');
    long long i = integer();
    if (d < 0 || i < 0) fail("negative cell reference");
    return {static_cast<int>(d), static_cast<std::size_t>(i)};
  }
  std::string quoted() {
    expect('"');
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) {
        ++pos_;
        out.push_back(s_[pos_] == 'n' ? '\n' : s_[pos_]);
      } else {
        out.push_back(s_[pos_]);
      }
      ++pos_;
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

}  // namespace detail

inline void write_complex(std::ostream& out, const CellComplex& c) {
  out << "# morse-levels complex\n";
  for (int d = 0; d <= c.dimension(); ++d) out << "cells[" << d << "] = " << c.count(d) << "\n";
  for (int d = 0; d <= c.dimension(); ++d)
    for (std::size_t i = 0; i < c.count(d); ++i) {
      CellRef cell{d, i};
      if (auto l = c.label(cell); !l.empty()) out << "label[" << to_string(cell) << "] = " << detail::quote(l) << "\n";
      auto bd = c.boundary(cell);
      if (bd.empty()) continue;
      out << "boundary[" << to_string(cell) << "] = [";
      for (std::size_t k = 0; k < bd.size(); ++k) {
        if (k) out << ", ";
        out << "(" << to_string(bd[k].face) << ", " << bd[k].coeff << ")";
      }
      out << "]\n";
    }
}

inline std::string complex_to_text(const CellComplex& c) {
  std::ostringstream os;
  write_complex(os, c);
  return os.str();
}

inline CellComplex read_complex(std::istream& in) {
  std::map<int, std::size_t> counts;
  std::map<CellRef, std::vector<BoundaryTerm>> boundaries;
  std::map<CellRef, std::string> labels;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    detail::LineParser p(line, line_no);
    if (p.at_end() || p.accept('#')) continue;
    std::string key = p.word();
    p.expect('[');
    if (key == "cells") {
      long long d = p.integer();
      p.expect(']');
      p.expect('=');
      long long n = p.integer();
      if (d < 0 || n < 0) p.fail("negative cell count");
      if (!counts.emplace(static_cast<int>(d), static_cast<std::size_t>(n)).second) p.fail("duplicate cells line");
    } else if (key == "boundary" || key == "label") {
      CellRef cell = p.cell();
      p.expect(']');
      p.expect('=');
      if (key == "label") {
        labels[cell] = p.quoted();
      } else {
        auto& terms = boundaries[cell];
        p.expect('[');
        if (!p.accept(']')) {
          do {
            p.expect('(');
            CellRef face = p.cell();
            p.expect(',');
            long long coeff = p.integer();
            p.expect(')');
            terms.push_back({face, coeff});
          } while (p.accept(','));
          p.expect(']');
        }
      }
    } else {
      p.fail("unknown key '" + key + "'");
    }
    if (!p.at_end()) p.fail("trailing characters");
  }

  auto cell_exists = [&](CellRef c) {
    auto it = counts.find(c.dim);
    return it != counts.end() && c.index < it->second;
  };
  for (const auto& [cell, _] : boundaries)
    if (!cell_exists(cell)) throw ValidationError("boundary given for undeclared cell " + to_string(cell));
  for (const auto& [cell, _] : labels)
    if (!cell_exists(cell)) throw ValidationError("label given for undeclared cell " + to_string(cell));

  CellComplex::Builder b;
  int top = counts.empty() ? -1 : counts.rbegin()->first;
  for (int d = 0; d <= top; ++d) {
    b.ensure_dim(d);
    std::size_t n = counts.count(d) ? counts.at(d) : 0;
    for (std::size_t i = 0; i < n; ++i) {
      CellRef cell{d, i};
      auto bit = boundaries.find(cell);
      auto lit = labels.find(cell);
      b.add_cell(d, bit == boundaries.end() ? std::vector<BoundaryTerm>{} : bit->second,
                 lit == labels.end() ? std::string{} : lit->second);
    }
  }
  return std::move(b).build();
}

inline CellComplex complex_from_text(const std::string& text) {
  std::istringstream is(text);
  return read_complex(is);
}

}  // namespace morse_levels
