#pragma once

// Truncated path-space representation of F_d.
//
// The Hilbert space has one basis vector xi_mu per path mu of F_d of length
// at most L = d + 1. S[e] sends xi_mu to xi_{e mu} when s(e) = r(mu) and
// |mu| < L, P[v] projects onto paths ranging at v, and T[ns] acts on the
// paths into the tail's sink: on the N_k paths of length k (lexicographic
// order) it is diag(exp(2 pi i j / N_k)), j = 0..N_k-1. One more length than
// tail levels lets s(f_1) carry every level of the corner, so the loop
// operator sees N_0, ..., N_d.
//
// The summation relation fails on vertex vectors and S^*S = P fails on
// length-L paths; relations are therefore checked on the interior
// span{xi_mu : 1 <= |mu| <= L - 1}. Words with more letters move further
// along the length grading and need the wider margin
// span{xi_mu : m <= |mu| <= L - m} where m is the word length.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "afembed/ck_term.hpp"
#include "afembed/embedding.hpp"
#include "afembed/loops.hpp"

namespace afembed {

using Complex = std::complex<double>;
using SparseOperator = Eigen::SparseMatrix<Complex>;

/// Every path of a finite graph up to a length bound, ordered by length and
/// then lexicographically by edge ids in composition order.
class PathBasis {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  static PathBasis enumerate(const Graph& g, std::size_t max_length);

  std::size_t size() const noexcept { return length_.size(); }
  std::size_t max_length() const noexcept { return max_length_; }

  std::size_t length(std::size_t i) const { return length_[i]; }
  /// Vertex index of r(mu).
  std::size_t range(std::size_t i) const { return range_[i]; }
  /// Index of the path with the last edge removed; npos for vertices.
  std::size_t parent(std::size_t i) const { return parent_[i]; }
  /// Edge index of the last (range-end) edge; npos for vertices.
  std::size_t top_edge(std::size_t i) const { return top_[i]; }

  Path path(const Graph& g, std::size_t i) const;
  /// Position of `p` in the basis, npos if it is longer than the bound.
  std::size_t index_of(const Graph& g, const Path& p) const;

 private:
  std::size_t max_length_ = 0;
  std::vector<std::size_t> length_;
  std::vector<std::size_t> range_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> top_;
  std::vector<std::size_t> vertex_path_;  // vertex index -> basis index
};

struct CornerEntry {
  std::size_t index;  // basis index
  std::uint64_t j;
  std::uint64_t n;    // N_k of the path's level
};

class TruncatedRep {
 public:
  std::size_t depth() const noexcept { return depth_; }
  std::size_t max_length() const noexcept { return basis_.max_length(); }
  std::size_t dimension() const noexcept { return basis_.size(); }
  const CKContext& context() const noexcept { return context_; }
  const Graph& graph() const noexcept { return context_.graph(); }
  const PathBasis& basis() const noexcept { return basis_; }

  const SparseOperator& p(const VertexId& v) const;
  const SparseOperator& s(const EdgeId& e) const;
  const SparseOperator& t(const std::string& ns) const;
  /// T^k with phases computed from exact residues.
  SparseOperator t_power(const std::string& ns, int k) const;

  /// Sizes of the level blocks of the tail's corner, N_0..N_d.
  const std::vector<std::uint64_t>& corner_blocks(const std::string& ns) const;
  const std::vector<CornerEntry>& corner(const std::string& ns) const;

 private:
  friend TruncatedRep build_rep(const AugmentedGraphSpec& spec, std::size_t depth);
  explicit TruncatedRep(CKContext ctx) : context_(std::move(ctx)) {}

  std::size_t depth_ = 0;
  CKContext context_;
  PathBasis basis_;
  std::vector<SparseOperator> p_;
  std::vector<SparseOperator> s_;
  std::map<std::string, SparseOperator> t_;
  std::map<std::string, std::vector<CornerEntry>> corner_;
  std::map<std::string, std::vector<std::uint64_t>> blocks_;
};

/// Throws PreconditionError for depth 0.
TruncatedRep build_rep(const AugmentedGraphSpec& spec, std::size_t depth);

/// Product of the letter operators, without any rewriting.
SparseOperator op_of_word(const Word& w, const TruncatedRep& rep);

/// Linear extension of s_a t^k s_b^* -> S[a] T^k S[b]^*. Throws ContextError
/// when the term names generators the representation does not have.
SparseOperator op_of_term(const CKTerm& term, const TruncatedRep& rep);

/// Q A Q for Q the projection onto span{xi_mu : lo <= |mu| <= hi}.
SparseOperator compress(const SparseOperator& a, const TruncatedRep& rep, std::size_t lo,
                        std::size_t hi);
/// Compression to span{xi_mu : m <= |mu| <= L - m}.
SparseOperator compress_interior(const SparseOperator& a, const TruncatedRep& rep,
                                 std::size_t margin = 1);

/// Schur test: sqrt(max column sum * max row sum) of |entries|, an upper
/// bound for the operator norm, exact for diagonal and monomial matrices.
double norm_bound(const SparseOperator& a);

struct ResidualRow {
  std::string name;
  double residual;
};

struct ResidualReport {
  /// Interior-compressed residuals of every relation instance.
  std::vector<ResidualRow> relations;
  /// Summation-relation defect on vertex vectors, one row per receiving vertex.
  std::vector<ResidualRow> boundary_defects;

  double max_residual() const;
  const ResidualRow* find(const std::string& name) const;
};

/// Relations of the F_d family itself (prefix "F."), of the mapped family
/// (prefix "E."), the loop identities (prefixes "s~*s~", "s~s~*"), and the
/// corner unitarity of each T.
ResidualReport relation_residuals(const TruncatedRep& rep, const GeneratorMap& map);

struct SpectrumReport {
  std::size_t loop_length = 0;
  /// Nonzero eigenvalues, sorted by argument in [0, 2 pi).
  std::vector<Complex> eigenvalues;
  /// Eigenvalues of the compressed operator below the nonzero cutoff.
  std::size_t zero_count = 0;
  double max_modulus_defect = 0;
  /// Upper bound on the Hausdorff distance between the nonzero spectrum and
  /// the unit circle.
  double hausdorff_to_circle = 0;
  /// pi * gcd(n, N_d) / N_d.
  double net_bound = 0;
  /// Max distance to the closed form {exp(2 pi i j n / N_k)}; +inf when the
  /// multiset sizes differ.
  double closed_form_deviation = 0;
};

/// Spectrum of the image of s(e_n) ... s(e_1) under `map` at this depth.
/// Throws PreconditionError when the loop was not replaced by a tail.
SpectrumReport loop_spectrum(const TruncatedRep& rep, const AugmentedGraphSpec& spec,
                             const SimpleLoop& loop, const GeneratorMap& map);

/// {exp(2 pi i j n / N_k) : 0 <= k < counts.size(), 0 <= j < N_k}, sorted by
/// argument.
std::vector<Complex> closed_form_loop_spectrum(std::span<const std::uint64_t> counts,
                                               std::size_t n);

/// Bound on the Hausdorff distance of a finite set of nonzero points to the
/// unit circle: largest angular gap as a chord, plus the largest modulus
/// defect.
double hausdorff_to_unit_circle(std::span<const Complex> points);

}  // namespace afembed
