#include "afembed/numeric_rep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace afembed {
namespace {

using Triplet = Eigen::Triplet<Complex>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNonzeroCutoff = 1e-8;

SparseOperator from_triplets(std::size_t dim, const std::vector<Triplet>& entries) {
  SparseOperator m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(entries.begin(), entries.end());
  m.makeCompressed();
  return m;
}

SparseOperator identity(std::size_t dim) {
  SparseOperator m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setIdentity();
  return m;
}

Complex root_of_unity(std::uint64_t j, std::uint64_t n) {
  const double angle = kTwoPi * static_cast<double>(j % n) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

double argument01(const Complex& z) {
  double a = std::arg(z);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi - 1e-12) a = 0;
  return a;
}

}  // namespace

// ---------------------------------------------------------------------------
// PathBasis

PathBasis PathBasis::enumerate(const Graph& g, std::size_t max_length) {
  PathBasis b;
  b.max_length_ = max_length;
  const std::size_t nv = g.vertex_count();
  b.vertex_path_.resize(nv);
  std::vector<std::vector<std::size_t>> by_range(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    b.vertex_path_[v] = b.size();
    by_range[v].push_back(b.size());
    b.length_.push_back(0);
    b.range_.push_back(v);
    b.parent_.push_back(npos);
    b.top_.push_back(npos);
  }
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<std::vector<std::size_t>> next(nv);
    bool any = false;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const std::size_t src = g.source_index(e);
      const std::size_t rng = g.range_index(e);
      for (std::size_t mu : by_range[src]) {
        next[rng].push_back(b.size());
        b.length_.push_back(len);
        b.range_.push_back(rng);
        b.parent_.push_back(mu);
        b.top_.push_back(e);
        any = true;
      }
    }
    if (!any) break;
    by_range = std::move(next);
  }
  return b;
}

Path PathBasis::path(const Graph& g, std::size_t i) const {
  if (top_[i] == npos) return Path::vertex(g, g.vertices()[range_[i]]);
  std::vector<EdgeId> edges;
  for (std::size_t k = i; top_[k] != npos; k = parent_[k]) edges.push_back(g.edges()[top_[k]].id);
  return Path::from_edges(g, std::move(edges));
}

std::size_t PathBasis::index_of(const Graph& g, const Path& p) const {
  if (p.length() > max_length_) return npos;
  std::size_t cur = vertex_path_[g.vertex_index(p.source())];
  // walk from the source end; children of `cur` along edge e
  for (auto it = p.edges().rbegin(); it != p.edges().rend(); ++it) {
    const std::size_t e = g.edge_index(*it);
    std::size_t found = npos;
    for (std::size_t k = cur + 1; k < size(); ++k) {
      if (length_[k] > length_[cur] + 1) break;
      if (parent_[k] == cur && top_[k] == e) {
        found = k;
        break;
      }
    }
    if (found == npos) return npos;
    cur = found;
  }
  return cur;
}

// ---------------------------------------------------------------------------
// TruncatedRep

const SparseOperator& TruncatedRep::p(const VertexId& v) const {
  if (!graph().has_vertex(v)) throw ContextError("unknown vertex '" + v.str() + "'");
  return p_[graph().vertex_index(v)];
}

const SparseOperator& TruncatedRep::s(const EdgeId& e) const {
  if (!graph().has_edge(e)) throw ContextError("unknown edge '" + e.str() + "'");
  return s_[graph().edge_index(e)];
}

const SparseOperator& TruncatedRep::t(const std::string& ns) const {
  auto it = t_.find(ns);
  if (it == t_.end()) throw ContextError("unknown tail '" + ns + "'");
  return it->second;
}

SparseOperator TruncatedRep::t_power(const std::string& ns, int k) const {
  const auto& entries = corner(ns);
  std::vector<Triplet> trip;
  trip.reserve(entries.size());
  for (const CornerEntry& c : entries) {
    // j*k mod n with k possibly negative
    const auto n = static_cast<std::int64_t>(c.n);
    std::int64_t r = (static_cast<std::int64_t>(c.j % c.n) * (k % n)) % n;
    if (r < 0) r += n;
    const auto idx = static_cast<Eigen::Index>(c.index);
    trip.emplace_back(idx, idx, root_of_unity(static_cast<std::uint64_t>(r), c.n));
  }
  return from_triplets(dimension(), trip);
}

const std::vector<std::uint64_t>& TruncatedRep::corner_blocks(const std::string& ns) const {
  auto it = blocks_.find(ns);
  if (it == blocks_.end()) throw ContextError("unknown tail '" + ns + "'");
  return it->second;
}

const std::vector<CornerEntry>& TruncatedRep::corner(const std::string& ns) const {
  auto it = corner_.find(ns);
  if (it == corner_.end()) throw ContextError("unknown tail '" + ns + "'");
  return it->second;
}

TruncatedRep build_rep(const AugmentedGraphSpec& spec, std::size_t depth) {
  if (depth == 0) throw PreconditionError("depth 0 has no nontrivial corner");
  TruncatedRep rep(make_context(spec, depth));
  rep.depth_ = depth;
  const Graph& g = rep.graph();
  rep.basis_ = PathBasis::enumerate(g, depth + 1);
  const PathBasis& b = rep.basis_;
  const std::size_t dim = b.size();

  std::vector<std::vector<Triplet>> p_trip(g.vertex_count()), s_trip(g.edge_count());
  for (std::size_t i = 0; i < dim; ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    p_trip[b.range(i)].emplace_back(idx, idx, 1.0);
    if (b.top_edge(i) != PathBasis::npos)
      s_trip[b.top_edge(i)].emplace_back(idx, static_cast<Eigen::Index>(b.parent(i)), 1.0);
  }
  for (auto& t : p_trip) rep.p_.push_back(from_triplets(dim, t));
  for (auto& t : s_trip) rep.s_.push_back(from_triplets(dim, t));

  for (const LoopReplacement& r : spec.replacements) {
    const std::size_t sink = g.vertex_index(r.tail.sink());
    std::vector<std::vector<std::size_t>> levels(depth + 2);
    for (std::size_t i = 0; i < dim; ++i)
      if (b.range(i) == sink) levels[b.length(i)].push_back(i);
    std::vector<std::uint64_t> blocks;
    std::vector<CornerEntry> entries;
    for (const auto& level : levels) {
      if (level.empty()) break;
      blocks.push_back(level.size());
      for (std::size_t j = 0; j < level.size(); ++j)
        entries.push_back({level[j], j, level.size()});
    }
    rep.blocks_.emplace(r.tail.ns, std::move(blocks));
    rep.corner_.emplace(r.tail.ns, std::move(entries));
    rep.t_.emplace(r.tail.ns, rep.t_power(r.tail.ns, 1));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Evaluation

SparseOperator op_of_word(const Word& w, const TruncatedRep& rep) {
  if (w.empty()) throw ContextError("empty word");
  rep.context().check(w);
  SparseOperator acc = identity(rep.dimension());
  for (const Letter& l : w) {
    SparseOperator next;
    switch (l.kind) {
      case LetterKind::Projection:
        next = acc * rep.p(VertexId(l.id));
        break;
      case LetterKind::Edge:
        next = acc * rep.s(EdgeId(l.id));
        break;
      case LetterKind::EdgeAdjoint: {
        SparseOperator adj = rep.s(EdgeId(l.id)).adjoint();
        next = acc * adj;
        break;
      }
      case LetterKind::Unitary:
        next = acc * rep.t_power(l.id, l.power);
        break;
    }
    acc = std::move(next);
  }
  acc.prune(Complex(0.0));
  return acc;
}

SparseOperator op_of_term(const CKTerm& term, const TruncatedRep& rep) {
  SparseOperator acc(static_cast<Eigen::Index>(rep.dimension()),
                     static_cast<Eigen::Index>(rep.dimension()));
  for (const auto& [m, c] : term.terms()) {
    SparseOperator w = op_of_word(m.letters(), rep);
    acc += c.to_complex() * w;
  }
  acc.prune(Complex(0.0));
  return acc;
}

SparseOperator compress(const SparseOperator& a, const TruncatedRep& rep, std::size_t lo,
                        std::size_t hi) {
  const PathBasis& b = rep.basis();
  auto inside = [&](Eigen::Index i) {
    const std::size_t len = b.length(static_cast<std::size_t>(i));
    return len >= lo && len <= hi;
  };
  std::vector<Triplet> trip;
  for (Eigen::Index col = 0; col < a.outerSize(); ++col) {
    if (!inside(col)) continue;
    for (SparseOperator::InnerIterator it(a, col); it; ++it)
      if (inside(it.row())) trip.emplace_back(it.row(), col, it.value());
  }
  return from_triplets(rep.dimension(), trip);
}

SparseOperator compress_interior(const SparseOperator& a, const TruncatedRep& rep,
                                 std::size_t margin) {
  const std::size_t top = rep.max_length();
  if (2 * margin > top) return SparseOperator(a.rows(), a.cols());
  return compress(a, rep, margin, top - margin);
}

double norm_bound(const SparseOperator& a) {
  std::vector<double> row(static_cast<std::size_t>(a.rows()), 0.0);
  double col_max = 0;
  for (Eigen::Index col = 0; col < a.outerSize(); ++col) {
    double sum = 0;
    for (SparseOperator::InnerIterator it(a, col); it; ++it) {
      sum += std::abs(it.value());
      row[static_cast<std::size_t>(it.row())] += std::abs(it.value());
    }
    col_max = std::max(col_max, sum);
  }
  const double row_max = row.empty() ? 0.0 : *std::max_element(row.begin(), row.end());
  return std::sqrt(col_max * row_max);
}

// ---------------------------------------------------------------------------
// Residuals

double ResidualReport::max_residual() const {
  double m = 0;
  for (const auto& r : relations) m = std::max(m, r.residual);
  return m;
}

const ResidualRow* ResidualReport::find(const std::string& name) const {
  for (const auto& r : relations)
    if (r.name == name) return &r;
  for (const auto& r : boundary_defects)
    if (r.name == name) return &r;
  return nullptr;
}

ResidualReport relation_residuals(const TruncatedRep& rep, const GeneratorMap& map) {
  const Graph& F = rep.graph();
  const Graph& E = map.domain;
  ResidualReport report;
  auto interior = [&](const SparseOperator& a) { return norm_bound(compress_interior(a, rep)); };

  // The family of F_d.
  for (const VertexId& v : F.vertices()) {
    const SparseOperator& p = rep.p(v);
    SparseOperator sq = p * p - p;
    SparseOperator adj = SparseOperator(p.adjoint()) - p;
    report.relations.push_back({"F.ck1 " + v.str(), std::max(interior(sq), interior(adj))});
  }
  for (const Edge& e : F.edges()) {
    SparseOperator se_star = rep.s(e.id).adjoint();
    for (const Edge& f : F.edges()) {
      SparseOperator lhs = se_star * rep.s(f.id);
      if (e.id == f.id) lhs -= rep.p(e.source);
      report.relations.push_back({"F.ck2 " + e.id.str() + "," + f.id.str(), interior(lhs)});
    }
  }
  for (const VertexId& v : F.vertices()) {
    const auto receivers = F.receivers(v);
    if (receivers.empty()) continue;
    SparseOperator diff = rep.p(v);
    for (const EdgeId& e : receivers) diff -= rep.s(e) * SparseOperator(rep.s(e).adjoint());
    report.relations.push_back({"F.ck3 " + v.str(), interior(diff)});
    report.boundary_defects.push_back({"F.ck3-boundary " + v.str(),
                                       norm_bound(compress(diff, rep, 0, 0))});
  }
  for (const Tail& t : rep.context().tails()) {
    const SparseOperator& T = rep.t(t.ns);
    SparseOperator T_star = T.adjoint();
    SparseOperator a = T * T_star - rep.p(t.sink);
    SparseOperator b = T_star * T - rep.p(t.sink);
    SparseOperator c = rep.p(t.sink) * T - T;
    SparseOperator d = T * rep.p(t.sink) - T;
    report.relations.push_back(
        {"F.unitary " + t.ns,
         std::max({norm_bound(a), norm_bound(b), norm_bound(c), norm_bound(d)})});
  }

  // The mapped family.
  std::map<VertexId, SparseOperator> pv;
  std::map<EdgeId, SparseOperator> se;
  for (const auto& [v, term] : map.vertices) pv.emplace(v, op_of_term(term, rep));
  for (const auto& [e, term] : map.edges) se.emplace(e, op_of_term(term, rep));

  for (const VertexId& v : E.vertices()) {
    const SparseOperator& p = pv.at(v);
    SparseOperator sq = p * p - p;
    SparseOperator adj = SparseOperator(p.adjoint()) - p;
    report.relations.push_back({"E.ck1 " + v.str(), std::max(interior(sq), interior(adj))});
  }
  for (const Edge& e : E.edges()) {
    SparseOperator se_star = se.at(e.id).adjoint();
    for (const Edge& f : E.edges()) {
      SparseOperator lhs = se_star * se.at(f.id);
      if (e.id == f.id) lhs -= pv.at(e.source);
      report.relations.push_back({"E.ck2 " + e.id.str() + "," + f.id.str(), interior(lhs)});
    }
  }
  for (const VertexId& v : E.vertices()) {
    const auto receivers = E.receivers(v);
    if (receivers.empty()) continue;
    SparseOperator diff = pv.at(v);
    for (const EdgeId& e : receivers) diff -= se.at(e) * SparseOperator(se.at(e).adjoint());
    report.relations.push_back({"E.ck3 " + v.str(), interior(diff)});
  }

  // Loop identities for replaced edges.
  if (!entrance_violation(E)) {
    for (const SimpleLoop& loop : disjoint_simple_loops(E)) {
      const std::size_t n = loop.length();
      for (std::size_t i = 1; i <= n; ++i) {
        const SparseOperator& s = se.at(loop.edge(i));
        SparseOperator s_star = s.adjoint();
        SparseOperator a = s_star * s - pv.at(loop.vertex(i));
        SparseOperator b = s * s_star - pv.at(loop.vertex(i % n + 1));
        report.relations.push_back({"s~*s~ " + loop.edge(i).str(), interior(a)});
        report.relations.push_back({"s~s~* " + loop.edge(i).str(), interior(b)});
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Spectra

std::vector<Complex> closed_form_loop_spectrum(std::span<const std::uint64_t> counts,
                                               std::size_t n) {
  struct Item {
    std::uint64_t num;
    std::uint64_t den;
  };
  std::vector<Item> items;
  for (std::uint64_t nk : counts)
    for (std::uint64_t j = 0; j < nk; ++j) items.push_back({(j * (n % nk)) % nk, nk});
  // Corner blocks stay far below 2^32, so the cross products cannot overflow.
  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.num * b.den < b.num * a.den; });
  std::vector<Complex> out;
  out.reserve(items.size());
  for (const Item& it : items) out.push_back(root_of_unity(it.num, it.den));
  return out;
}

double hausdorff_to_unit_circle(std::span<const Complex> points) {
  if (points.empty()) return std::numeric_limits<double>::infinity();
  std::vector<double> angles;
  double modulus = 0;
  for (const Complex& z : points) {
    angles.push_back(argument01(z));
    modulus = std::max(modulus, std::abs(std::abs(z) - 1.0));
  }
  std::sort(angles.begin(), angles.end());
  double gap = kTwoPi - angles.back() + angles.front();
  for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
  return 2.0 * std::sin(gap / 4.0) + modulus;
}

SpectrumReport loop_spectrum(const TruncatedRep& rep, const AugmentedGraphSpec& spec,
                             const SimpleLoop& loop, const GeneratorMap& map) {
  const LoopReplacement* replacement = nullptr;
  for (const LoopReplacement& r : spec.replacements) {
    if (r.loop.length() != loop.length()) continue;
    for (std::size_t k = 1; k <= loop.length(); ++k) {
      if (r.loop.vertex(k) != loop.vertex(1)) continue;
      bool same = true;
      for (std::size_t i = 1; i <= loop.length() && same; ++i)
        same = r.loop.edge((k + i - 2) % loop.length() + 1) == loop.edge(i);
      if (same) replacement = &r;
    }
  }
  if (!replacement) throw PreconditionError("loop '" + loop.to_string() + "' was not replaced");

  SparseOperator op = op_of_term(map.edges.at(loop.edges().front()), rep);
  for (std::size_t i = 1; i < loop.edges().size(); ++i) {
    SparseOperator next = op * op_of_term(map.edges.at(loop.edges()[i]), rep);
    op = std::move(next);
  }
  op.prune(Complex(0.0));

  std::vector<char> used(rep.dimension(), 0);
  for (Eigen::Index col = 0; col < op.outerSize(); ++col)
    for (SparseOperator::InnerIterator it(op, col); it; ++it) {
      used[static_cast<std::size_t>(col)] = 1;
      used[static_cast<std::size_t>(it.row())] = 1;
    }
  std::vector<Eigen::Index> support_of(rep.dimension(), -1);
  Eigen::Index m = 0;
  for (std::size_t i = 0; i < used.size(); ++i)
    if (used[i]) support_of[i] = m++;

  Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(m, m);
  for (Eigen::Index col = 0; col < op.outerSize(); ++col)
    for (SparseOperator::InnerIterator it(op, col); it; ++it)
      dense(support_of[static_cast<std::size_t>(it.row())], support_of[static_cast<std::size_t>(col)]) =
          it.value();

  SpectrumReport report;
  report.loop_length = loop.length();
  if (m > 0) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(dense, /*computeEigenvectors=*/false);
    for (Eigen::Index i = 0; i < m; ++i) {
      const Complex lambda = solver.eigenvalues()(i);
      if (std::abs(lambda) > kNonzeroCutoff)
        report.eigenvalues.push_back(lambda);
      else
        ++report.zero_count;
    }
  }
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(),
            [](const Complex& a, const Complex& b) { return argument01(a) < argument01(b); });
  for (const Complex& z : report.eigenvalues)
    report.max_modulus_defect = std::max(report.max_modulus_defect, std::abs(std::abs(z) - 1.0));
  report.hausdorff_to_circle = hausdorff_to_unit_circle(report.eigenvalues);

  const auto& blocks = rep.corner_blocks(replacement->tail.ns);
  const std::uint64_t finest = blocks.back();
  report.net_bound =
      std::numbers::pi * static_cast<double>(std::gcd(static_cast<std::uint64_t>(loop.length()), finest)) /
      static_cast<double>(finest);

  const auto expected = closed_form_loop_spectrum(blocks, loop.length());
  if (expected.size() != report.eigenvalues.size()) {
    report.closed_form_deviation = std::numeric_limits<double>::infinity();
  } else {
    for (std::size_t i = 0; i < expected.size(); ++i)
      report.closed_form_deviation =
          std::max(report.closed_form_deviation, std::abs(expected[i] - report.eigenvalues[i]));
  }
  return report;
}

}  // namespace afembed
