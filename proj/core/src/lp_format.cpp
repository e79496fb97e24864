#include "domove/lp_format.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "num_format.hpp"

namespace domove {

namespace {

constexpr std::size_t kTermsPerLine = 10;

std::string num(double v) { return detail::shortest_double(v); }

void emit_expr(std::string& out, const std::string& head,
               const std::vector<std::pair<std::size_t, double>>& terms,
               const std::vector<MipVariable>& vars, const std::string& tail) {
  out += ' ';
  out += head;
  std::size_t on_line = 0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& [vi, c] = terms[k];
    if (on_line == kTermsPerLine) {
      out += "\n  ";
      on_line = 0;
    }
    out += ' ';
    if (k == 0) {
      if (c < 0) out += "- ";
      const double a = std::abs(c);
      if (a != 1.0) {
        out += num(a);
        out += ' ';
      }
    } else {
      out += c < 0 ? "- " : "+ ";
      const double a = std::abs(c);
      if (a != 1.0) {
        out += num(a);
        out += ' ';
      }
    }
    out += vars[vi].name;
    ++on_line;
  }
  if (!tail.empty()) {
    out += ' ';
    out += tail;
  }
  out += '\n';
}

const char* sense_text(Sense s) {
  switch (s) {
    case Sense::le: return "<=";
    case Sense::ge: return ">=";
    case Sense::eq: return "=";
  }
  return "=";
}

// ---------------------------------------------------------------------------
// Parsing

struct Tok {
  std::string text;
  int line;
};

[[noreturn]] void fail(int line, const std::string& msg) {
  throw std::runtime_error("lp parse error at line " + std::to_string(line) +
                           ": " + msg);
}

bool is_number_token(const std::string& t) {
  const char c = t.front();
  return (c >= '0' && c <= '9') || c == '.' ||
         ((c == '-' || c == '+') && t.size() > 1);
}

double parse_number(const Tok& t) {
  double v = 0.0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || p != last) {
    fail(t.line, "invalid number '" + t.text + "'");
  }
  return v;
}

enum class Block { zp, zpq, pl, xp, xpq, xpqd };

struct VarName {
  Block block;
  std::size_t i = 0, j = 0, mm = 0;
};

std::optional<std::size_t> parse_index(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<VarName> parse_var_name(std::string_view s) {
  std::vector<std::string_view> parts;
  while (!s.empty()) {
    const std::size_t cut = s.find('_');
    parts.push_back(s.substr(0, cut));
    if (cut == std::string_view::npos) break;
    s.remove_prefix(cut + 1);
  }
  if (parts.empty()) return std::nullopt;
  VarName v;
  std::size_t arity = 0;
  const std::string_view stem = parts[0];
  if (stem == "zp") {
    v.block = Block::zp;
    arity = 2;
  } else if (stem == "zpq") {
    v.block = Block::zpq;
    arity = 3;
  } else if (stem == "pl") {
    v.block = Block::pl;
    arity = 2;
  } else if (stem == "xp") {
    v.block = Block::xp;
    arity = 1;
  } else if (stem == "xpq") {
    v.block = Block::xpq;
    arity = 2;
  } else if (stem == "xpqd") {
    v.block = Block::xpqd;
    arity = 3;
  } else {
    return std::nullopt;
  }
  if (parts.size() != arity + 1) return std::nullopt;
  std::vector<std::size_t> idx;
  for (std::size_t k = 1; k < parts.size(); ++k) {
    auto n = parse_index(parts[k]);
    if (!n) return std::nullopt;
    idx.push_back(*n);
  }
  if (arity == 1) {
    v.i = idx[0];
  } else if (arity == 2) {
    v.i = idx[0];
    v.mm = idx[1];  // for xpq the second index is j; fixed up by caller
    v.j = idx[1];
  } else {
    v.i = idx[0];
    v.j = idx[1];
    v.mm = idx[2];
  }
  return v;
}

struct ParsedTerm {
  VarName var;
  std::string name;
  double coef;
  int line;
};

struct ParsedConstraint {
  std::string name;
  std::vector<ParsedTerm> terms;
  Sense sense;
  double rhs;
  int line;
};

VarName require_var(const Tok& t) {
  auto v = parse_var_name(t.text);
  if (!v) fail(t.line, "unknown variable '" + t.text + "'");
  return *v;
}

// Parses "coef var" sequences from toks[pos..] until a sense token or the
// end of the stream.
std::vector<ParsedTerm> parse_terms(const std::vector<Tok>& toks,
                                    std::size_t& pos) {
  std::vector<ParsedTerm> terms;
  bool first = true;
  while (pos < toks.size()) {
    const std::string& t = toks[pos].text;
    if (t == "<=" || t == ">=" || t == "=") break;
    if (t.size() > 1 && t.back() == ':') break;  // next constraint
    double sign = 1.0;
    if (t == "+" || t == "-") {
      sign = t == "-" ? -1.0 : 1.0;
      ++pos;
    } else if (!first) {
      fail(toks[pos].line, "expected '+' or '-' before '" + t + "'");
    }
    if (pos >= toks.size()) fail(toks.back().line, "dangling sign");
    double coef = 1.0;
    if (is_number_token(toks[pos].text)) {
      coef = parse_number(toks[pos]);
      ++pos;
      if (pos >= toks.size()) fail(toks.back().line, "dangling coefficient");
    }
    ParsedTerm term{require_var(toks[pos]), toks[pos].text, sign * coef,
                    toks[pos].line};
    terms.push_back(std::move(term));
    ++pos;
    first = false;
  }
  if (terms.empty() && pos < toks.size()) {
    fail(toks[pos].line, "expected at least one term");
  }
  return terms;
}

}  // namespace

std::string export_lp(const MipModel& model) {
  std::string out;
  out += "\\ dominance-move mip: np=" + std::to_string(model.meta.np) +
         " nq=" + std::to_string(model.meta.nq) +
         " m=" + std::to_string(model.meta.m) + "\n";
  out += "Minimize\n";
  emit_expr(out, "obj:", model.objective, model.variables, "");
  out += "Subject To\n";
  for (const MipConstraint& c : model.constraints) {
    emit_expr(out, c.name + ":", c.terms, model.variables,
              std::string(sense_text(c.sense)) + " " + num(c.rhs));
  }
  out += "Bounds\n";
  const double inf = std::numeric_limits<double>::infinity();
  for (const MipVariable& v : model.variables) {
    if (v.kind != VarKind::continuous) continue;
    if (v.lower == 0.0 && v.upper == inf) continue;  // LP default
    out += ' ' + num(v.lower) + " <= " + v.name + " <= " + num(v.upper) + '\n';
  }
  out += "Binary\n";
  for (const MipVariable& v : model.variables) {
    if (v.kind == VarKind::binary) {
      out += ' ';
      out += v.name;
      out += '\n';
    }
  }
  out += "End\n";
  return out;
}

MipModel parse_lp(std::string_view text) {
  // Split into lines, classify into sections, tokenize.
  enum Section { none, objective, rows, bounds, binary, done };
  std::vector<Tok> sec_toks[6];
  Section cur = none;
  int line_no = 0;
  std::size_t pos = 0;
  bool any_content = false;
  int last_line = 1;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    std::size_t b = line.find_first_not_of(" \t");
    if (b == std::string_view::npos) {
      if (eol == std::string_view::npos) break;
      continue;
    }
    std::string_view body = line.substr(b);
    if (body.front() == '\\') continue;  // comment
    any_content = true;
    last_line = line_no;

    std::string_view trimmed = body;
    const std::size_t e = trimmed.find_last_not_of(" \t");
    trimmed = trimmed.substr(0, e + 1);
    if (trimmed == "Minimize") {
      if (cur != none) fail(line_no, "unexpected 'Minimize'");
      cur = objective;
      continue;
    }
    if (trimmed == "Subject To") {
      if (cur != objective) fail(line_no, "unexpected 'Subject To'");
      cur = rows;
      continue;
    }
    if (trimmed == "Bounds") {
      if (cur != rows) fail(line_no, "unexpected 'Bounds'");
      cur = bounds;
      continue;
    }
    if (trimmed == "Binary") {
      if (cur != bounds) fail(line_no, "unexpected 'Binary'");
      cur = binary;
      continue;
    }
    if (trimmed == "End") {
      if (cur != binary) fail(line_no, "unexpected 'End'");
      cur = done;
      continue;
    }
    if (cur == none) fail(line_no, "content before 'Minimize'");
    if (cur == done) fail(line_no, "content after 'End'");

    std::size_t tpos = 0;
    while (tpos < trimmed.size()) {
      while (tpos < trimmed.size() &&
             (trimmed[tpos] == ' ' || trimmed[tpos] == '\t')) {
        ++tpos;
      }
      if (tpos >= trimmed.size()) break;
      std::size_t tend = tpos;
      while (tend < trimmed.size() && trimmed[tend] != ' ' &&
             trimmed[tend] != '\t') {
        ++tend;
      }
      sec_toks[cur].push_back(
          Tok{std::string(trimmed.substr(tpos, tend - tpos)), line_no});
      tpos = tend;
    }

    if (eol == std::string_view::npos) break;
  }
  if (!any_content) fail(1, "empty input");
  if (cur != done) fail(last_line, "missing 'End'");

  // Objective.
  auto& obj_toks = sec_toks[objective];
  if (obj_toks.empty() || obj_toks[0].text != "obj:") {
    fail(obj_toks.empty() ? last_line : obj_toks[0].line,
         "objective must start with 'obj:'");
  }
  std::size_t op = 1;
  std::vector<ParsedTerm> obj_terms = parse_terms(obj_toks, op);
  if (op != obj_toks.size()) {
    fail(obj_toks[op].line, "unexpected token '" + obj_toks[op].text +
                                "' in objective");
  }

  // Constraints.
  std::vector<ParsedConstraint> rows_out;
  auto& row_toks = sec_toks[rows];
  std::size_t rp = 0;
  while (rp < row_toks.size()) {
    const Tok& head = row_toks[rp];
    if (head.text.size() < 2 || head.text.back() != ':') {
      fail(head.line, "expected constraint name, got '" + head.text + "'");
    }
    ParsedConstraint pc;
    pc.name = head.text.substr(0, head.text.size() - 1);
    pc.line = head.line;
    ++rp;
    pc.terms = parse_terms(row_toks, rp);
    if (rp >= row_toks.size()) fail(head.line, "constraint without relation");
    const std::string& s = row_toks[rp].text;
    if (s == "<=") {
      pc.sense = Sense::le;
    } else if (s == ">=") {
      pc.sense = Sense::ge;
    } else if (s == "=") {
      pc.sense = Sense::eq;
    } else {
      fail(row_toks[rp].line, "expected relation, got '" + s + "'");
    }
    ++rp;
    if (rp >= row_toks.size()) fail(head.line, "constraint without rhs");
    pc.rhs = parse_number(row_toks[rp]);
    ++rp;
    rows_out.push_back(std::move(pc));
  }

  // Bounds: groups of `lb <= name <= ub`.
  struct BoundEntry {
    VarName var;
    std::string name;
    double lower, upper;
    int line;
  };
  std::vector<BoundEntry> bound_entries;
  auto& bnd_toks = sec_toks[bounds];
  for (std::size_t bp = 0; bp < bnd_toks.size();) {
    if (bp + 5 > bnd_toks.size()) {
      fail(bnd_toks[bp].line, "malformed bounds entry");
    }
    if (bnd_toks[bp + 1].text != "<=" || bnd_toks[bp + 3].text != "<=") {
      fail(bnd_toks[bp].line, "malformed bounds entry");
    }
    BoundEntry be{require_var(bnd_toks[bp + 2]), bnd_toks[bp + 2].text,
                  parse_number(bnd_toks[bp]), parse_number(bnd_toks[bp + 4]),
                  bnd_toks[bp].line};
    bound_entries.push_back(std::move(be));
    bp += 5;
  }

  // Binary names.
  std::vector<std::pair<VarName, int>> binary_entries;
  for (const Tok& t : sec_toks[binary]) {
    binary_entries.emplace_back(require_var(t), t.line);
  }

  // Shape: maxima over every name seen anywhere.
  std::size_t np = 0, nq = 0, m = 0;
  bool saw_xp = false, saw_zp = false, saw_xpq = false;
  auto absorb = [&](const VarName& v) {
    switch (v.block) {
      case Block::xp:
        np = std::max(np, v.i + 1);
        saw_xp = true;
        break;
      case Block::zp:
      case Block::pl:
        np = std::max(np, v.i + 1);
        m = std::max(m, v.mm + 1);
        saw_zp = true;
        break;
      case Block::xpq:
        np = std::max(np, v.i + 1);
        nq = std::max(nq, v.j + 1);
        saw_xpq = true;
        break;
      case Block::zpq:
      case Block::xpqd:
        np = std::max(np, v.i + 1);
        nq = std::max(nq, v.j + 1);
        m = std::max(m, v.mm + 1);
        break;
    }
  };
  for (const auto& t : obj_terms) absorb(t.var);
  for (const auto& c : rows_out) {
    for (const auto& t : c.terms) absorb(t.var);
  }
  for (const auto& b : bound_entries) absorb(b.var);
  for (const auto& [v, l] : binary_entries) absorb(v);
  if (!saw_xp || !saw_zp || !saw_xpq || np == 0 || nq == 0 || m == 0) {
    fail(last_line, "model does not declare a complete variable layout");
  }

  const MipLayout lay{np, nq, m};
  auto canon = [&](const VarName& v, int line) -> std::size_t {
    switch (v.block) {
      case Block::zp:
        if (v.mm >= m) fail(line, "variable index out of range");
        return lay.zp(v.i, v.mm);
      case Block::zpq:
        if (v.j >= nq || v.mm >= m) fail(line, "variable index out of range");
        return lay.zpq(v.i, v.j, v.mm);
      case Block::pl:
        if (v.mm >= m) fail(line, "variable index out of range");
        return lay.pl(v.i, v.mm);
      case Block::xp:
        return lay.xp(v.i);
      case Block::xpq:
        if (v.j >= nq) fail(line, "variable index out of range");
        return lay.xpq(v.i, v.j);
      case Block::xpqd:
        if (v.j >= nq || v.mm >= m) fail(line, "variable index out of range");
        return lay.xpqd(v.i, v.j, v.mm);
    }
    fail(line, "unreachable");
  };

  MipModel model;
  model.meta.np = np;
  model.meta.nq = nq;
  model.meta.m = m;
  model.meta.lbp.assign(np * m, 0.0);
  model.meta.ubp.assign(np * m, 0.0);
  model.meta.big_m.assign(np * nq * m, 0.0);

  const double inf = std::numeric_limits<double>::infinity();
  model.variables.resize(lay.total());
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t mm = 0; mm < m; ++mm) {
      const std::string suffix =
          "_" + std::to_string(i) + "_" + std::to_string(mm);
      model.variables[lay.zp(i, mm)] = {"zp" + suffix, VarKind::continuous,
                                        0.0, inf};
      model.variables[lay.pl(i, mm)] = {"pl" + suffix, VarKind::continuous,
                                        0.0, inf};
    }
    model.variables[lay.xp(i)] = {"xp_" + std::to_string(i), VarKind::binary,
                                  0.0, 1.0};
    for (std::size_t j = 0; j < nq; ++j) {
      const std::string ij = "_" + std::to_string(i) + "_" + std::to_string(j);
      model.variables[lay.xpq(i, j)] = {"xpq" + ij, VarKind::binary, 0.0, 1.0};
      for (std::size_t mm = 0; mm < m; ++mm) {
        const std::string ijm = ij + "_" + std::to_string(mm);
        model.variables[lay.zpq(i, j, mm)] = {"zpq" + ijm,
                                              VarKind::continuous, 0.0, inf};
        model.variables[lay.xpqd(i, j, mm)] = {"xpqd" + ijm, VarKind::binary,
                                               0.0, 1.0};
      }
    }
  }

  for (const auto& b : bound_entries) {
    if (b.var.block != Block::pl) {
      fail(b.line, "unexpected bounds for '" + b.name + "'");
    }
    const std::size_t vi = canon(b.var, b.line);
    model.variables[vi].lower = b.lower;
    model.variables[vi].upper = b.upper;
    model.meta.lbp[b.var.i * m + b.var.mm] = b.lower;
    model.meta.ubp[b.var.i * m + b.var.mm] = b.upper;
  }

  for (const auto& t : obj_terms) {
    model.objective.emplace_back(canon(t.var, t.line), t.coef);
  }
  for (const auto& pc : rows_out) {
    MipConstraint row;
    row.name = pc.name;
    row.sense = pc.sense;
    row.rhs = pc.rhs;
    for (const auto& t : pc.terms) {
      row.terms.emplace_back(canon(t.var, t.line), t.coef);
    }
    model.constraints.push_back(std::move(row));
    // Recover big-M entries from the zpq upper-bound rows.
    const ParsedConstraint& src = pc;
    if (src.name.rfind("zpq_ub2_", 0) == 0) {
      for (const auto& t : src.terms) {
        if (t.var.block == Block::xpqd) {
          model.meta.big_m[(t.var.i * nq + t.var.j) * m + t.var.mm] = -t.coef;
        }
      }
    }
  }

  return model;
}

}  // namespace domove
