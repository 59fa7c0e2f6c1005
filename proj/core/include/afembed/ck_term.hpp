#pragma once

// Formal *-algebra generated by a Cuntz-Krieger family of a graph F together
// with one unitary symbol t per Bratteli tail (t lives in the corner of the
// tail's sink v: t t* = t* t = p_v, p_v t = t p_v = t).
//
// A monomial is a word of letters p(w), s(e), s*(e), t(ns)^k. Words are kept
// reduced under the rewrite rules
//
//   type mismatch between neighbours      -> 0
//   s*(e) s(f)                            -> delta_{ef} p(s(e))
//   p(w) X, X p(w)   (types agree)        -> X
//   t^a t^b                               -> t^{a+b}, t^0 -> p(v)
//   s(e) s*(e)   when r^{-1}(r(e)) = {e}  -> p(r(e))
//
// which are length-reducing and confluent, so a left-to-right stack reduction
// reaches the unique normal form. Words of the shape s_a t^k s_b^* are the
// usual spanning monomials; products such as t s(b) for a tail edge b ranging
// at v have no such shape and stay as longer reduced words.
//
// Sums s(e) s*(e) over several receivers are never contracted; equality
// modulo the summation relation at such a vertex goes through expand_ck3.

#include <compare>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "afembed/gaussian.hpp"
#include "afembed/graph.hpp"

namespace afembed {

class CKContext;
class CKTerm;
CKTerm expand_ck3(const CKTerm& term, const VertexId& v, const CKContext& ctx);

enum class LetterKind { Projection, Edge, EdgeAdjoint, Unitary };

struct Letter {
  LetterKind kind;
  std::string id;  // vertex, edge, or tail namespace
  int power = 0;   // nonzero for Unitary only

  static Letter p(std::string v) { return {LetterKind::Projection, std::move(v), 0}; }
  static Letter s(std::string e) { return {LetterKind::Edge, std::move(e), 0}; }
  static Letter s_star(std::string e) {
    return {LetterKind::EdgeAdjoint, std::move(e), 0};
  }
  static Letter t(std::string ns, int power = 1) {
    return {LetterKind::Unitary, std::move(ns), power};
  }

  Letter adjoint() const;

  friend auto operator<=>(const Letter&, const Letter&) = default;
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// An unreduced product of letters; the empty word is the scalar unit.
using Word = std::vector<Letter>;

/// A reduced, nonzero word. Only CKContext::reduce produces these.
class Monomial {
 public:
  const Word& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }

  /// The s_a t^k s_b^* reading of this word, when it has that shape.
  struct Standard {
    std::vector<EdgeId> alpha;  // composition order
    int k = 0;
    std::optional<std::string> tail;  // set iff k != 0
    std::vector<EdgeId> beta;         // composition order
    std::optional<VertexId> vertex;   // set for the bare projection p(w)
  };
  std::optional<Standard> standard_form() const;

  Monomial adjoint() const;

  std::string to_string() const;

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  friend class CKContext;
  friend CKTerm expand_ck3(const CKTerm&, const VertexId&, const CKContext&);
  explicit Monomial(Word w) : letters_(std::move(w)) {}
  Word letters_;
};

struct Tail {
  std::string ns;
  VertexId sink;
};

/// Graph plus tail data that the rewrite rules consult.
class CKContext {
 public:
  CKContext(Graph graph, std::vector<Tail> tails = {});

  const Graph& graph() const noexcept { return graph_; }
  const std::vector<Tail>& tails() const noexcept { return tails_; }
  const VertexId& sink(const std::string& ns) const;
  bool has_tail(const std::string& ns) const;

  /// Throws ContextError if a letter names an unknown generator or a
  /// Unitary letter has power 0.
  void check(const Word& w) const;

  /// Normal form; nullopt for zero. The empty word is rejected.
  std::optional<Monomial> reduce(const Word& w) const;

  /// Operator-domain and -codomain vertex of a letter.
  const VertexId& domain(const Letter& l) const;
  const VertexId& codomain(const Letter& l) const;

  /// The edge is the only receiver of its range vertex.
  bool unique_receiver(const EdgeId& e) const;

 private:
  Graph graph_;
  std::vector<Tail> tails_;
  std::map<std::string, VertexId> sinks_;
  std::vector<bool> unique_receiver_;
};

/// Finite linear combination of reduced monomials with exact coefficients.
/// No zero coefficients are stored; monomials are kept in canonical order.
class CKTerm {
 public:
  using Map = std::map<Monomial, GaussianRational>;

  CKTerm() = default;

  static CKTerm from_monomial(Monomial m, GaussianRational c = 1);
  /// Reduces `w` in `ctx`; zero words give the zero term.
  static CKTerm from_word(const CKContext& ctx, const Word& w,
                          GaussianRational c = 1);

  static CKTerm p(const CKContext& ctx, const VertexId& v);
  static CKTerm s(const CKContext& ctx, const EdgeId& e);
  static CKTerm s_star(const CKContext& ctx, const EdgeId& e);
  static CKTerm t(const CKContext& ctx, const std::string& ns, int power = 1);
  /// s_a for a path (p(v) for a vertex path).
  static CKTerm path(const CKContext& ctx, const Path& a);

  const Map& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  CKTerm& operator+=(const CKTerm& o);
  CKTerm& operator-=(const CKTerm& o);
  CKTerm& operator*=(const GaussianRational& c);
  friend CKTerm operator+(CKTerm a, const CKTerm& b) { return a += b; }
  friend CKTerm operator-(CKTerm a, const CKTerm& b) { return a -= b; }
  friend CKTerm operator*(const GaussianRational& c, CKTerm a) { return a *= c; }

  /// Canonical rendering in the term grammar; "0" for the zero term.
  std::string to_string() const;

  friend bool operator==(const CKTerm&, const CKTerm&) = default;

 private:
  void add(const Monomial& m, const GaussianRational& c);
  Map terms_;
};

/// Product in normal form. Throws ContextError if either factor names
/// generators outside `ctx`.
CKTerm multiply(const CKTerm& a, const CKTerm& b, const CKContext& ctx);

/// Product of several factors, left to right.
CKTerm product(std::initializer_list<CKTerm> factors, const CKContext& ctx);

/// Conjugate-linear involution: (c s_a t^k s_b^*)^* = conj(c) s_b t^{-k} s_a^*.
CKTerm adjoint(const CKTerm& a);

/// Replaces every monomial p(v) by the sum of s(e) s*(e) over r^{-1}(v).
/// The result is deliberately left unreduced, so a unique receiver shows up
/// as s(e) s*(e) rather than contracting back. Throws PreconditionError when
/// v receives no edges.
CKTerm expand_ck3(const CKTerm& term, const VertexId& v, const CKContext& ctx);

/// Term grammar:
///   expr    := ['-'] product (('+' | '-') product)*
///   product := factor+
///   factor  := coeff | 'i' | 'p(' id ')' | 's(' id ')' | 's*(' id ')'
///            | 't(' ns ')' | 't*(' ns ')' | '(' expr ')'
///   coeff   := digits ['/' digits] ['i']
/// Juxtaposition is multiplication. A summand without any generator is an
/// error because the algebra has no unit. "0" parses as the zero term.
CKTerm parse_term(std::string_view text, const CKContext& ctx);

/// Unreduced parse result: each word with its coefficient.
std::vector<std::pair<Word, GaussianRational>> parse_words(std::string_view text);

std::string to_string(const Word& w);

}  // namespace afembed
