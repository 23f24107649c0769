// Copyright 2026 The vsnsim Authors
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

#include "vsn/lp_format.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <vector>

#include "vsn/common.hpp"

namespace vsn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest round-trip decimal form; parse(fmt(x)) == x bit for bit, which is
// what makes write -> parse -> write byte-stable.
std::string fmt_num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt_bound(double v) {
  if (v == kInf) return "+inf";
  if (v == -kInf) return "-inf";
  return fmt_num(v);
}

void append_terms(std::string& out, const std::vector<LinTerm>& terms,
                  const IlpModel& model) {
  bool first = true;
  for (const LinTerm& t : terms) {
    double a = std::fabs(t.coef);
    if (first) {
      out += t.coef < 0 ? " - " : " ";
      first = false;
    } else {
      out += t.coef < 0 ? " - " : " + ";
    }
    if (a != 1.0) {
      out += fmt_num(a);
      out += ' ';
    }
    out += model.variables()[t.var].name;
  }
}

const char* rel_str(Rel r) {
  switch (r) {
    case Rel::kLe:
      return "<=";
    case Rel::kEq:
      return "=";
    case Rel::kGe:
      return ">=";
  }
  return "?";
}

// --- parsing ---------------------------------------------------------------

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  bool eof() const { return pos >= text.size(); }
  char peek() const { return eof() ? '\0' : text[pos]; }

  void advance() {
    if (eof()) return;
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_spaces() {  // within the current line only
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) {
      advance();
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line, col);
  }
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

std::string read_ident(Cursor& c) {
  c.skip_spaces();
  if (!ident_start(c.peek())) c.fail("expected a name");
  std::string s;
  while (ident_char(c.peek())) {
    s += c.peek();
    c.advance();
  }
  return s;
}

// Signed number; accepts -inf/+inf/inf.
double read_number(Cursor& c) {
  c.skip_spaces();
  int sign = 1;
  if (c.peek() == '+' || c.peek() == '-') {
    if (c.peek() == '-') sign = -1;
    c.advance();
  }
  if (c.text.compare(c.pos, 3, "inf") == 0) {
    for (int i = 0; i < 3; ++i) c.advance();
    return sign * kInf;
  }
  double v = 0.0;
  const char* begin = c.text.data() + c.pos;
  const char* end = c.text.data() + c.text.size();
  auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{}) c.fail("expected a number");
  while (c.text.data() + c.pos != res.ptr) c.advance();
  return sign * v;
}

bool at_number(Cursor& c) {
  c.skip_spaces();
  char ch = c.peek();
  return std::isdigit(static_cast<unsigned char>(ch)) || ch == '.';
}

// One source line with position info, comments and blanks already dropped.
struct Line {
  std::string text;
  int number;
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::size_t end = nl == std::string::npos ? text.size() : nl;
    ++number;
    std::string line = text.substr(start, end - start);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string::npos && line[first] != '\\') {
      out.push_back({line, number});
    }
    if (nl == std::string::npos) break;
    start = nl + 1;
  }
  return out;
}

std::string trimmed(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

// Tokenizer over a single stored line; positions refer to the original file.
struct LineCursor {
  Cursor c;
  LineCursor(const Line& l) : c{l.text, 0, l.number, 1} {}
  bool done() {
    c.skip_spaces();
    return c.eof();
  }
};

struct ParsedTerm {
  std::string name;
  double coef;
  int line;
  int col;
};

// Reads "coef name" terms until a relational operator or end of line.
std::vector<ParsedTerm> read_terms(LineCursor& lc) {
  std::vector<ParsedTerm> out;
  bool first = true;
  for (;;) {
    Cursor& c = lc.c;
    c.skip_spaces();
    if (c.eof()) break;
    char ch = c.peek();
    if (ch == '<' || ch == '>' || ch == '=') break;
    double sign = 1.0;
    if (ch == '+' || ch == '-') {
      if (!first && out.empty()) c.fail("expected a term");
      sign = ch == '-' ? -1.0 : 1.0;
      c.advance();
    } else if (!first && !out.empty()) {
      c.fail("expected '+' or '-' between terms");
    }
    double coef = sign;
    if (at_number(c)) {
      coef = sign * read_number(c);
    }
    c.skip_spaces();
    int tl = c.line, tc = c.col;
    if (!ident_start(c.peek())) c.fail("expected a variable name");
    std::string name = read_ident(c);
    out.push_back({std::move(name), coef, tl, tc});
    first = false;
  }
  return out;
}

Rel read_rel(LineCursor& lc) {
  Cursor& c = lc.c;
  c.skip_spaces();
  char ch = c.peek();
  if (ch == '<') {
    c.advance();
    if (c.peek() == '=') c.advance();
    return Rel::kLe;
  }
  if (ch == '>') {
    c.advance();
    if (c.peek() == '=') c.advance();
    return Rel::kGe;
  }
  if (ch == '=') {
    c.advance();
    if (c.peek() == '<') {
      c.advance();
      return Rel::kLe;
    }
    if (c.peek() == '>') {
      c.advance();
      return Rel::kGe;
    }
    return Rel::kEq;
  }
  c.fail("expected '<=', '>=' or '='");
}

void expect_line_end(LineCursor& lc) {
  if (!lc.done()) lc.c.fail("unexpected trailing text");
}

VarMeta meta_from_name(const std::string& name) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t us = name.find('_', start);
    parts.push_back(name.substr(start, us - start));
    if (us == std::string::npos) break;
    start = us + 1;
  }
  auto num = [](const std::string& s, int& out) {
    if (s.empty()) return false;
    for (char ch : s) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    }
    out = std::atoi(s.c_str());
    return true;
  };
  VarMeta m;
  m.role = VarMeta::Role::kNone;
  const std::string& head = parts[0];
  if (head == "y" && parts.size() == 4 && num(parts[1], m.i) &&
      num(parts[2], m.j) && num(parts[3], m.k)) {
    m.role = VarMeta::Role::kAssign;
  } else if (head == "x" && parts.size() == 2 && num(parts[1], m.i)) {
    m.role = VarMeta::Role::kActivate;
  } else if (head == "f" && parts.size() == 3 && num(parts[1], m.i) &&
             num(parts[2], m.h)) {
    m.role = VarMeta::Role::kFlowTotal;
  } else if (head == "f" && parts.size() == 4 && num(parts[1], m.i) &&
             num(parts[2], m.h) && num(parts[3], m.j)) {
    m.role = VarMeta::Role::kFlowApp;
  } else if (head == "b" && parts.size() == 3 && num(parts[1], m.i) &&
             num(parts[2], m.h)) {
    m.role = VarMeta::Role::kRoute;
  } else if (head == "lam" && parts.size() == 2) {
    if (parts[1] == "min") {
      m.role = VarMeta::Role::kMinSlack;
    } else if (num(parts[1], m.i)) {
      m.role = VarMeta::Role::kNodeSlack;
    }
  }
  if (m.role == VarMeta::Role::kNone) m.i = m.h = m.j = m.k = -1;
  return m;
}

struct BoundEntry {
  std::string name;
  double lower;
  double upper;
  int line;
  int col;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path);
  out << content;
  if (!out) throw ConfigError("failed writing " + path);
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += "'";
  return out;
}

}  // namespace

std::string write_lp(const IlpModel& model) {
  std::string out;
  out += "\\ vsn ilp\n";
  out += "Maximize\n obj:";
  {
    std::string terms;
    append_terms(terms, model.objective(), model);
    out += terms;
  }
  out += "\nSubject To\n";
  for (const IlpConstraint& c : model.constraints()) {
    if (c.terms.empty()) {
      throw ConfigError("constraint " + c.name + " has no terms");
    }
    out += ' ';
    out += c.name;
    out += ':';
    append_terms(out, c.terms, model);
    out += ' ';
    out += rel_str(c.rel);
    out += ' ';
    out += fmt_num(c.rhs);
    out += '\n';
  }
  out += "Bounds\n";
  for (const IlpVariable& v : model.variables()) {
    out += ' ';
    out += fmt_bound(v.lower);
    out += " <= ";
    out += v.name;
    out += " <= ";
    out += fmt_bound(v.upper);
    out += '\n';
  }
  out += "Binaries\n";
  for (const IlpVariable& v : model.variables()) {
    if (v.kind == VarKind::kBinary) {
      out += ' ';
      out += v.name;
      out += '\n';
    }
  }
  out += "End\n";
  return out;
}

IlpModel parse_lp(const std::string& text) {
  std::vector<Line> lines = split_lines(text);

  enum Section { kNone, kMaximize, kSubjectTo, kBounds, kBinaries, kEnd };
  Section section = kNone;

  struct RawRow {
    std::string name;
    std::vector<ParsedTerm> terms;
    Rel rel;
    double rhs;
  };
  std::vector<ParsedTerm> objective;
  bool saw_objective = false;
  std::vector<RawRow> rows;
  std::vector<BoundEntry> bounds;
  std::set<std::string> binaries;

  for (const Line& line : lines) {
    std::string t = trimmed(line.text);
    if (t == "Maximize") {
      if (section != kNone) throw ParseError("misplaced Maximize", line.number, 1);
      section = kMaximize;
      continue;
    }
    if (t == "Minimize") {
      throw ParseError("only Maximize models are supported", line.number, 1);
    }
    if (t == "Subject To") {
      if (section != kMaximize) {
        throw ParseError("misplaced Subject To", line.number, 1);
      }
      section = kSubjectTo;
      continue;
    }
    if (t == "Bounds") {
      if (section != kSubjectTo) throw ParseError("misplaced Bounds", line.number, 1);
      section = kBounds;
      continue;
    }
    if (t == "Binaries") {
      if (section != kSubjectTo && section != kBounds) {
        throw ParseError("misplaced Binaries", line.number, 1);
      }
      section = kBinaries;
      continue;
    }
    if (t == "End") {
      section = kEnd;
      break;
    }

    LineCursor lc(line);
    switch (section) {
      case kNone:
        lc.c.fail("expected Maximize");
      case kMaximize: {
        if (saw_objective) lc.c.fail("objective must be a single line");
        read_ident(lc.c);  // label, conventionally "obj"
        lc.c.skip_spaces();
        if (lc.c.peek() != ':') lc.c.fail("expected ':' after objective label");
        lc.c.advance();
        objective = read_terms(lc);
        expect_line_end(lc);
        saw_objective = true;
        break;
      }
      case kSubjectTo: {
        RawRow row;
        row.name = read_ident(lc.c);
        lc.c.skip_spaces();
        if (lc.c.peek() != ':') lc.c.fail("expected ':' after constraint name");
        lc.c.advance();
        row.terms = read_terms(lc);
        if (row.terms.empty()) lc.c.fail("constraint has no terms");
        row.rel = read_rel(lc);
        row.rhs = read_number(lc.c);
        expect_line_end(lc);
        rows.push_back(std::move(row));
        break;
      }
      case kBounds: {
        BoundEntry e{"", 0.0, kInf, line.number, 1};
        lc.c.skip_spaces();
        if (ident_start(lc.c.peek())) {
          // name free | name <= v | name >= v | name = v
          e.line = lc.c.line;
          e.col = lc.c.col;
          e.name = read_ident(lc.c);
          lc.c.skip_spaces();
          if (lc.c.eof()) lc.c.fail("expected a bound after the name");
          std::string tail = trimmed(lc.c.text.substr(lc.c.pos));
          if (tail == "free") {
            e.lower = -kInf;
            e.upper = kInf;
            while (!lc.c.eof()) lc.c.advance();
          } else {
            Rel r = read_rel(lc);
            double v = read_number(lc.c);
            if (r == Rel::kLe) {
              e.upper = v;
            } else if (r == Rel::kGe) {
              e.lower = v;
            } else {
              e.lower = e.upper = v;
            }
            expect_line_end(lc);
          }
        } else {
          // lo <= name <= hi
          e.lower = read_number(lc.c);
          if (read_rel(lc) != Rel::kLe) lc.c.fail("expected '<='");
          lc.c.skip_spaces();
          e.line = lc.c.line;
          e.col = lc.c.col;
          e.name = read_ident(lc.c);
          if (read_rel(lc) != Rel::kLe) lc.c.fail("expected '<='");
          e.upper = read_number(lc.c);
          expect_line_end(lc);
        }
        bounds.push_back(std::move(e));
        break;
      }
      case kBinaries: {
        while (!lc.done()) binaries.insert(read_ident(lc.c));
        break;
      }
      case kEnd:
        break;
    }
  }
  if (section != kEnd) {
    int last = lines.empty() ? 1 : lines.back().number;
    throw ParseError("missing End", last, 1);
  }
  if (!saw_objective) throw ParseError("missing objective line", 1, 1);

  IlpModel model;
  auto declare = [&](const std::string& name, double lo, double hi, int ln,
                     int col) {
    if (model.variable_id(name) >= 0) {
      throw ParseError("duplicate bounds for " + name, ln, col);
    }
    VarKind kind =
        binaries.count(name) ? VarKind::kBinary : VarKind::kContinuous;
    model.add_variable(name, kind, lo, hi, meta_from_name(name));
  };
  for (const BoundEntry& e : bounds) {
    declare(e.name, e.lower, e.upper, e.line, e.col);
  }
  // Variables never mentioned in Bounds: declared at first appearance with
  // default bounds ([0, 1] for binaries, [0, +inf) otherwise).
  auto touch = [&](const ParsedTerm& t) {
    if (model.variable_id(t.name) >= 0) return;
    double hi = binaries.count(t.name) ? 1.0 : kInf;
    declare(t.name, 0.0, hi, t.line, t.col);
  };
  for (const ParsedTerm& t : objective) touch(t);
  for (const RawRow& row : rows) {
    for (const ParsedTerm& t : row.terms) touch(t);
  }

  std::vector<LinTerm> obj_terms;
  for (const ParsedTerm& t : objective) {
    obj_terms.push_back({model.variable_id(t.name), t.coef});
  }
  model.set_objective(std::move(obj_terms));
  for (const RawRow& row : rows) {
    std::vector<LinTerm> terms;
    for (const ParsedTerm& t : row.terms) {
      terms.push_back({model.variable_id(t.name), t.coef});
    }
    model.add_constraint(row.name, std::move(terms), row.rel, row.rhs);
  }
  try {
    model.check_wellformed();
  } catch (const std::logic_error& e) {
    throw ParseError(e.what(), 1, 1);
  }
  return model;
}

void export_lp(const IlpModel& model, const std::string& path) {
  write_file(path, write_lp(model));
}

IlpModel load_lp(const std::string& path) { return parse_lp(read_file(path)); }

std::string write_solution(const IlpModel& model, const SolveResult& result) {
  std::string out;
  out += "status ";
  out += solve_status_name(result.status);
  out += '\n';
  if (result.has_solution) {
    out += "objective ";
    out += fmt_num(result.objective);
    out += '\n';
    for (std::size_t j = 0; j < model.variables().size(); ++j) {
      out += model.variables()[j].name;
      out += ' ';
      out += fmt_num(j < result.values.size() ? result.values[j] : 0.0);
      out += '\n';
    }
  }
  return out;
}

SolveResult parse_solution(const IlpModel& model, const std::string& text) {
  SolveResult out;
  out.values.assign(model.variables().size(), 0.0);
  bool saw_status = false;
  bool saw_objective = false;
  for (const Line& line : split_lines(text)) {
    LineCursor lc(line);
    std::string head = read_ident(lc.c);
    if (head == "status") {
      std::string value = read_ident(lc.c);
      expect_line_end(lc);
      bool known = false;
      for (SolveStatus s :
           {SolveStatus::kOptimal, SolveStatus::kInfeasible,
            SolveStatus::kNodeLimit, SolveStatus::kTimeLimit}) {
        if (value == solve_status_name(s)) {
          out.status = s;
          known = true;
        }
      }
      if (!known) {
        throw ParseError("unknown status '" + value + "'", line.number, 1);
      }
      saw_status = true;
      continue;
    }
    if (head == "objective") {
      out.objective = read_number(lc.c);
      expect_line_end(lc);
      saw_objective = true;
      continue;
    }
    int id = model.variable_id(head);
    if (id < 0) {
      throw ParseError("unknown variable '" + head + "' in solution",
                       line.number, 1);
    }
    out.values[id] = read_number(lc.c);
    expect_line_end(lc);
  }
  if (!saw_status) throw ParseError("missing status line", 1, 1);
  out.has_solution = saw_objective;
  if (!out.has_solution) out.values.clear();
  out.best_bound = out.objective;
  return out;
}

SolveResult import_solution(const IlpModel& model, const std::string& path) {
  return parse_solution(model, read_file(path));
}

SolveResult solve_via_external(const IlpModel& model,
                               const std::string& solver_cmd,
                               const std::string& work_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(work_dir);
  fs::path lp = fs::path(work_dir) / "model.lp";
  fs::path sol = fs::path(work_dir) / "model.sol";
  std::error_code ec;
  fs::remove(sol, ec);
  export_lp(model, lp.string());
  std::string cmd =
      solver_cmd + " " + shell_quote(lp.string()) + " " + shell_quote(sol.string());
  int rc = std::system(cmd.c_str());
  if (rc != 0) {
    throw IntegrityError("external solver failed (exit status " +
                         std::to_string(rc) + "): " + solver_cmd);
  }
  return import_solution(model, sol.string());
}

}  // namespace vsn
