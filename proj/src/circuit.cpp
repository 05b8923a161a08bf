#include "circuit.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "errors.hpp"

namespace snc {

const char* gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::rz: return "rz";
    case GateKind::rx: return "rx";
    case GateKind::cz: return "cz";
    case GateKind::id: return "id";
  }
  return "?";
}

namespace {

[[noreturn]] void parse_fail(int line, int col, const std::string& what) {
  fail(errc::parse, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                        what);
}

struct Token {
  std::string text;
  int column; // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#')
      ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

int parse_wire_index(const Token& t, int line, int wires, const char* what) {
  const std::string& s = t.text;
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    parse_fail(line, t.column, std::string(what) + " must be a wire index, got '" + s + "'");
  long v = std::strtol(s.c_str(), nullptr, 10);
  if (v >= wires)
    parse_fail(line, t.column,
               std::string(what) + " " + s + " is out of range for wires " +
                   std::to_string(wires));
  return static_cast<int>(v);
}

bool parse_pi_fraction(const std::string& s, double& out) {
  std::size_t i = 0;
  double sign = 1.0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    if (s[i] == '-') sign = -1.0;
    ++i;
  }
  std::size_t num_start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  double num = i > num_start ? std::strtod(s.substr(num_start, i - num_start).c_str(), nullptr)
                             : 1.0;
  if (s.compare(i, 2, "pi") != 0) return false;
  i += 2;
  double den = 1.0;
  if (i < s.size()) {
    if (s[i] != '/') return false;
    ++i;
    std::size_t den_start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == den_start || i != s.size()) return false;
    den = std::strtod(s.substr(den_start).c_str(), nullptr);
    if (den == 0.0) return false;
  }
  out = sign * num * M_PI / den;
  return true;
}

} // namespace

double parse_angle(const std::string& token) {
  double v = 0.0;
  if (parse_pi_fraction(token, v)) return v;
  char* end = nullptr;
  v = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size())
    fail(errc::parse, "bad angle '" + token + "'");
  return v;
}

Circuit parse_circuit(const std::string& text) {
  Circuit c;
  bool have_wires = false;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::vector<Token> toks = tokenize(raw);
    if (toks.empty()) continue;
    const Token& op = toks[0];

    if (!have_wires) {
      if (op.text != "wires")
        parse_fail(line_no, op.column, "expected 'wires <count>' first, got '" + op.text + "'");
      if (toks.size() != 2)
        parse_fail(line_no, op.column, "'wires' takes exactly one count");
      const std::string& s = toks[1].text;
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        parse_fail(line_no, toks[1].column, "wire count must be a positive integer");
      long v = std::strtol(s.c_str(), nullptr, 10);
      if (v < 1 || v > 1024)
        parse_fail(line_no, toks[1].column, "wire count must be between 1 and 1024");
      c.wires = static_cast<int>(v);
      have_wires = true;
      continue;
    }
    if (op.text == "wires")
      parse_fail(line_no, op.column, "duplicate 'wires' directive");

    Gate g;
    g.line = line_no;
    if (op.text == "rz" || op.text == "rx") {
      g.kind = op.text == "rz" ? GateKind::rz : GateKind::rx;
      if (toks.size() != 3)
        parse_fail(line_no, op.column, "'" + op.text + "' takes a wire and an angle");
      g.q1 = parse_wire_index(toks[1], line_no, c.wires, "wire");
      try {
        g.angle = parse_angle(toks[2].text);
      } catch (const error&) {
        parse_fail(line_no, toks[2].column, "bad angle '" + toks[2].text + "'");
      }
      g.angle_text = toks[2].text;
    } else if (op.text == "cz") {
      g.kind = GateKind::cz;
      if (toks.size() != 3)
        parse_fail(line_no, op.column, "'cz' takes two wires");
      g.q1 = parse_wire_index(toks[1], line_no, c.wires, "wire");
      g.q2 = parse_wire_index(toks[2], line_no, c.wires, "wire");
      if (g.q1 == g.q2)
        parse_fail(line_no, toks[2].column, "cz wires must differ");
      if (std::abs(g.q1 - g.q2) != 1)
        parse_fail(line_no, toks[2].column,
                   "cz couples adjacent wires only, got " + std::to_string(g.q1) + " and " +
                       std::to_string(g.q2));
    } else if (op.text == "id") {
      g.kind = GateKind::id;
      if (toks.size() != 2)
        parse_fail(line_no, op.column, "'id' takes exactly one wire");
      g.q1 = parse_wire_index(toks[1], line_no, c.wires, "wire");
    } else {
      parse_fail(line_no, op.column, "unknown directive '" + op.text + "'");
    }
    c.gates.push_back(g);
  }
  if (!have_wires) fail(errc::parse, "line 1, column 1: empty circuit, expected 'wires <count>'");
  return c;
}

std::string Circuit::to_text() const {
  std::ostringstream out;
  out << "wires " << wires << "\n";
  for (const Gate& g : gates) {
    out << gate_kind_name(g.kind) << ' ' << g.q1;
    if (g.kind == GateKind::cz) out << ' ' << g.q2;
    if (g.kind == GateKind::rz || g.kind == GateKind::rx) {
      if (!g.angle_text.empty()) {
        out << ' ' << g.angle_text;
      } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", g.angle);
        out << ' ' << buf;
      }
    }
    out << "\n";
  }
  return out.str();
}

std::vector<int> wire_depths(const Circuit& c) {
  std::vector<int> next(c.wires, 0);
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::cz) {
      int slot = std::max(next[g.q1], next[g.q2]);
      next[g.q1] = slot + 1;
      next[g.q2] = slot + 1;
    } else {
      ++next[g.q1];
    }
  }
  return next;
}

} // namespace snc
