#include "afembed/ck_term.hpp"

#include <cctype>
#include <cstdlib>

namespace afembed {
namespace {

std::string letter_string(const Letter& l) {
  switch (l.kind) {
    case LetterKind::Projection:
      return "p(" + l.id + ")";
    case LetterKind::Edge:
      return "s(" + l.id + ")";
    case LetterKind::EdgeAdjoint:
      return "s*(" + l.id + ")";
    case LetterKind::Unitary: {
      const std::string one = (l.power > 0 ? "t(" : "t*(") + l.id + ")";
      std::string out;
      for (int k = 0; k < std::abs(l.power); ++k) {
        if (k) out += ' ';
        out += one;
      }
      return out;
    }
  }
  return {};
}

enum class Step { Zero, Replace, Keep };

}  // namespace

Letter Letter::adjoint() const {
  switch (kind) {
    case LetterKind::Projection:
      return *this;
    case LetterKind::Edge:
      return s_star(id);
    case LetterKind::EdgeAdjoint:
      return s(id);
    case LetterKind::Unitary:
      return t(id, -power);
  }
  return *this;
}

std::string to_string(const Word& w) {
  std::string out;
  for (const Letter& l : w) {
    if (!out.empty()) out += ' ';
    out += letter_string(l);
  }
  return out;
}

std::optional<Monomial::Standard> Monomial::standard_form() const {
  Standard st;
  if (letters_.size() == 1 && letters_[0].kind == LetterKind::Projection) {
    st.vertex = VertexId(letters_[0].id);
    return st;
  }
  std::size_t i = 0;
  while (i < letters_.size() && letters_[i].kind == LetterKind::Edge)
    st.alpha.emplace_back(letters_[i++].id);
  if (i < letters_.size() && letters_[i].kind == LetterKind::Unitary) {
    st.k = letters_[i].power;
    st.tail = letters_[i].id;
    ++i;
  }
  while (i < letters_.size() && letters_[i].kind == LetterKind::EdgeAdjoint)
    st.beta.insert(st.beta.begin(), EdgeId(letters_[i++].id));
  if (i != letters_.size()) return std::nullopt;
  return st;
}

Monomial Monomial::adjoint() const {
  Word w;
  w.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    w.push_back(it->adjoint());
  return Monomial(std::move(w));
}

std::string Monomial::to_string() const { return afembed::to_string(letters_); }

CKContext::CKContext(Graph graph, std::vector<Tail> tails)
    : graph_(std::move(graph)), tails_(std::move(tails)) {
  for (const Tail& t : tails_) {
    if (!graph_.has_vertex(t.sink))
      throw ContextError("tail '" + t.ns + "' has sink '" + t.sink.str() +
                         "' outside the graph");
    if (!sinks_.emplace(t.ns, t.sink).second)
      throw ContextError("duplicate tail namespace '" + t.ns + "'");
  }
  unique_receiver_.resize(graph_.edge_count());
  for (std::size_t e = 0; e < graph_.edge_count(); ++e)
    unique_receiver_[e] = graph_.receiver_indices(graph_.range_index(e)).size() == 1;
}

const VertexId& CKContext::sink(const std::string& ns) const {
  auto it = sinks_.find(ns);
  if (it == sinks_.end()) throw ContextError("unknown tail '" + ns + "'");
  return it->second;
}

bool CKContext::has_tail(const std::string& ns) const { return sinks_.contains(ns); }

bool CKContext::unique_receiver(const EdgeId& e) const {
  return unique_receiver_[graph_.edge_index(e)];
}

void CKContext::check(const Word& w) const {
  for (const Letter& l : w) {
    switch (l.kind) {
      case LetterKind::Projection:
        if (!graph_.has_vertex(VertexId(l.id)))
          throw ContextError("unknown vertex '" + l.id + "' in p(" + l.id + ")");
        break;
      case LetterKind::Edge:
      case LetterKind::EdgeAdjoint:
        if (!graph_.has_edge(EdgeId(l.id)))
          throw ContextError("unknown edge '" + l.id + "' in " + letter_string(l));
        break;
      case LetterKind::Unitary:
        if (!has_tail(l.id)) throw ContextError("unknown tail '" + l.id + "'");
        if (l.power == 0) throw ContextError("unitary letter with power 0");
        break;
    }
  }
}

const VertexId& CKContext::domain(const Letter& l) const {
  switch (l.kind) {
    case LetterKind::Projection:
      return graph_.vertices()[graph_.vertex_index(VertexId(l.id))];
    case LetterKind::Edge:
      return graph_.source(EdgeId(l.id));
    case LetterKind::EdgeAdjoint:
      return graph_.range(EdgeId(l.id));
    case LetterKind::Unitary:
      return sink(l.id);
  }
  throw ContextError("bad letter");
}

const VertexId& CKContext::codomain(const Letter& l) const {
  switch (l.kind) {
    case LetterKind::Edge:
      return graph_.range(EdgeId(l.id));
    case LetterKind::EdgeAdjoint:
      return graph_.source(EdgeId(l.id));
    default:
      return domain(l);
  }
}

std::optional<Monomial> CKContext::reduce(const Word& w) const {
  if (w.empty()) throw ContextError("empty word has no value in a non-unital algebra");
  check(w);

  // Combine left letter x with right letter y (types already agree).
  auto combine = [this](const Letter& x, const Letter& y, Letter& out) -> Step {
    if (x.kind == LetterKind::Projection) {
      out = y;
      return Step::Replace;
    }
    if (y.kind == LetterKind::Projection) {
      out = x;
      return Step::Replace;
    }
    if (x.kind == LetterKind::EdgeAdjoint && y.kind == LetterKind::Edge) {
      if (x.id != y.id) return Step::Zero;
      out = Letter::p(graph_.source(EdgeId(x.id)).str());
      return Step::Replace;
    }
    if (x.kind == LetterKind::Unitary && y.kind == LetterKind::Unitary) {
      if (x.id != y.id) return Step::Zero;
      const int k = x.power + y.power;
      out = k == 0 ? Letter::p(sink(x.id).str()) : Letter::t(x.id, k);
      return Step::Replace;
    }
    if (x.kind == LetterKind::Edge && y.kind == LetterKind::EdgeAdjoint && x.id == y.id &&
        unique_receiver(EdgeId(x.id))) {
      out = Letter::p(graph_.range(EdgeId(x.id)).str());
      return Step::Replace;
    }
    return Step::Keep;
  };

  Word stack;
  stack.reserve(w.size());
  for (const Letter& next : w) {
    Letter y = next;
    for (;;) {
      if (stack.empty()) {
        stack.push_back(std::move(y));
        break;
      }
      if (domain(stack.back()) != codomain(y)) return std::nullopt;
      Letter merged;
      Step step = combine(stack.back(), y, merged);
      if (step == Step::Zero) return std::nullopt;
      if (step == Step::Keep) {
        stack.push_back(std::move(y));
        break;
      }
      stack.pop_back();
      y = std::move(merged);
    }
  }
  return Monomial(std::move(stack));
}

CKTerm CKTerm::from_monomial(Monomial m, GaussianRational c) {
  CKTerm out;
  out.add(m, c);
  return out;
}

CKTerm CKTerm::from_word(const CKContext& ctx, const Word& w, GaussianRational c) {
  auto m = ctx.reduce(w);
  if (!m) return {};
  return from_monomial(std::move(*m), std::move(c));
}

CKTerm CKTerm::p(const CKContext& ctx, const VertexId& v) {
  return from_word(ctx, {Letter::p(v.str())});
}

CKTerm CKTerm::s(const CKContext& ctx, const EdgeId& e) {
  return from_word(ctx, {Letter::s(e.str())});
}

CKTerm CKTerm::s_star(const CKContext& ctx, const EdgeId& e) {
  return from_word(ctx, {Letter::s_star(e.str())});
}

CKTerm CKTerm::t(const CKContext& ctx, const std::string& ns, int power) {
  if (power == 0) return p(ctx, ctx.sink(ns));
  return from_word(ctx, {Letter::t(ns, power)});
}

CKTerm CKTerm::path(const CKContext& ctx, const Path& a) {
  if (a.is_vertex()) return p(ctx, a.range());
  Word w;
  for (const EdgeId& e : a.edges()) w.push_back(Letter::s(e.str()));
  return from_word(ctx, w);
}

void CKTerm::add(const Monomial& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

CKTerm& CKTerm::operator+=(const CKTerm& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

CKTerm& CKTerm::operator-=(const CKTerm& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

CKTerm& CKTerm::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

std::string CKTerm::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative =
        (c.imag() == 0 && c.real() < 0) || (c.real() == 0 && c.imag() < 0);
    const GaussianRational mag = negative ? -c : c;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    if (!(mag == GaussianRational(1))) {
      if (mag.real() != 0 && mag.imag() != 0)
        out += "(" + mag.to_string() + ") ";
      else
        out += mag.to_string() + " ";
    }
    out += m.to_string();
  }
  return out;
}

CKTerm multiply(const CKTerm& a, const CKTerm& b, const CKContext& ctx) {
  CKTerm out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      Word w = ma.letters();
      w.insert(w.end(), mb.letters().begin(), mb.letters().end());
      out += CKTerm::from_word(ctx, w, ca * cb);
    }
  }
  return out;
}

CKTerm product(std::initializer_list<CKTerm> factors, const CKContext& ctx) {
  if (factors.size() == 0) throw PreconditionError("empty product");
  auto it = factors.begin();
  CKTerm acc = *it++;
  for (; it != factors.end(); ++it) acc = multiply(acc, *it, ctx);
  return acc;
}

CKTerm adjoint(const CKTerm& a) {
  CKTerm out;
  for (const auto& [m, c] : a.terms()) out += CKTerm::from_monomial(m.adjoint(), c.conj());
  return out;
}

CKTerm expand_ck3(const CKTerm& term, const VertexId& v, const CKContext& ctx) {
  const auto receivers = ctx.graph().receivers(v);
  if (receivers.empty())
    throw PreconditionError("vertex '" + v.str() +
                            "' receives no edges; no summation relation applies");
  const Word target{Letter::p(v.str())};
  CKTerm out;
  for (const auto& [m, c] : term.terms()) {
    if (m.letters() != target) {
      out += CKTerm::from_monomial(m, c);
      continue;
    }
    for (const EdgeId& e : receivers)
      out += CKTerm::from_monomial(Monomial(Word{Letter::s(e.str()), Letter::s_star(e.str())}),
                                   c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Term grammar

namespace {

using RawTerm = std::vector<std::pair<Word, GaussianRational>>;

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  RawTerm parse() {
    RawTerm out = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("term: " + msg, 1, pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }

  bool at_factor() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || starts_with("i") ||
           starts_with("p(") || starts_with("s(") || starts_with("s*(") ||
           starts_with("t(") || starts_with("t*(");
  }

  RawTerm expr() {
    skip_ws();
    bool negate = false;
    if (pos_ < text_.size() && text_[pos_] == '-') {
      negate = true;
      ++pos_;
    }
    RawTerm out;
    append(out, product(), negate);
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size() || (text_[pos_] != '+' && text_[pos_] != '-')) break;
      const bool minus = text_[pos_++] == '-';
      append(out, product(), minus);
    }
    return out;
  }

  static void append(RawTerm& out, RawTerm part, bool negate) {
    for (auto& [w, c] : part) out.emplace_back(std::move(w), negate ? -c : c);
  }

  RawTerm product() {
    if (!at_factor()) fail("expected a factor");
    RawTerm acc = factor();
    while (at_factor()) {
      RawTerm rhs = factor();
      RawTerm next;
      for (const auto& [wa, ca] : acc)
        for (const auto& [wb, cb] : rhs) {
          Word w = wa;
          w.insert(w.end(), wb.begin(), wb.end());
          next.emplace_back(std::move(w), ca * cb);
        }
      acc = std::move(next);
    }
    return acc;
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(')
      ++pos_;
    if (pos_ == start) fail("expected identifier");
    std::string id(text_.substr(start, pos_ - start));
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
    ++pos_;
    return id;
  }

  Rational integer() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return Rational(boost::multiprecision::cpp_int(std::string(text_.substr(start, pos_ - start))));
  }

  RawTerm factor() {
    skip_ws();
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational value = integer();
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        Rational den = integer();
        if (den == 0) fail("division by zero");
        value /= den;
      }
      if (pos_ < text_.size() && text_[pos_] == 'i') {
        ++pos_;
        return {{Word{}, GaussianRational(0, value)}};
      }
      return {{Word{}, GaussianRational(value)}};
    }
    if (c == '(') {
      ++pos_;
      RawTerm inner = expr();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (starts_with("s*(")) {
      pos_ += 3;
      return {{Word{Letter::s_star(identifier())}, 1}};
    }
    if (starts_with("t*(")) {
      pos_ += 3;
      return {{Word{Letter::t(identifier(), -1)}, 1}};
    }
    if (starts_with("p(")) {
      pos_ += 2;
      return {{Word{Letter::p(identifier())}, 1}};
    }
    if (starts_with("s(")) {
      pos_ += 2;
      return {{Word{Letter::s(identifier())}, 1}};
    }
    if (starts_with("t(")) {
      pos_ += 2;
      return {{Word{Letter::t(identifier(), 1)}, 1}};
    }
    if (c == 'i') {
      ++pos_;
      return {{Word{}, GaussianRational::i()}};
    }
    fail("expected a factor");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::pair<Word, GaussianRational>> parse_words(std::string_view text) {
  return TermParser(text).parse();
}

CKTerm parse_term(std::string_view text, const CKContext& ctx) {
  CKTerm out;
  for (const auto& [w, c] : parse_words(text)) {
    if (c.is_zero()) continue;
    if (w.empty())
      throw ParseError("term: summand '" + c.to_string() + "' has no generator", 0, 0);
    out += CKTerm::from_word(ctx, w, c);
  }
  return out;
}

}  // namespace afembed
