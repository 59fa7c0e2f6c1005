#include "afembed/ck_verify.hpp"

#include <sstream>

namespace afembed {
namespace {

RelationEntry compare(std::string id, const CKTerm& lhs, const CKTerm& rhs,
                      std::string note = {}) {
  CKTerm diff = lhs - rhs;
  const RelationStatus status = diff.is_zero() ? RelationStatus::Proved : RelationStatus::Failed;
  return {std::move(id), status, std::move(diff), std::move(note)};
}

const CKTerm& image(const GeneratorMap& map, const EdgeId& e) {
  auto it = map.edges.find(e);
  if (it == map.edges.end()) throw PreconditionError("edge '" + e.str() + "' is not mapped");
  return it->second;
}

const CKTerm& image(const GeneratorMap& map, const VertexId& v) {
  auto it = map.vertices.find(v);
  if (it == map.vertices.end())
    throw PreconditionError("vertex '" + v.str() + "' is not mapped");
  return it->second;
}

}  // namespace

std::string to_string(RelationStatus s) {
  switch (s) {
    case RelationStatus::Proved:
      return "proved";
    case RelationStatus::Failed:
      return "failed";
    case RelationStatus::Delegated:
      return "delegated";
    case RelationStatus::Recorded:
      return "recorded";
  }
  return "?";
}

bool RelationReport::all_proved() const { return count(RelationStatus::Failed) == 0; }

std::size_t RelationReport::count(RelationStatus s) const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.status == s;
  return n;
}

const RelationEntry* RelationReport::find(const std::string& id) const {
  for (const auto& e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

RelationReport verify_ck_family(const GeneratorMap& map, const CKContext& ctx) {
  const Graph& E = map.domain;
  RelationReport report;

  for (const VertexId& v : E.vertices()) {
    const CKTerm& p = image(map, v);
    RelationEntry idem = compare("ck1 " + v.str(), multiply(p, p, ctx), p);
    RelationEntry self = compare("ck1* " + v.str(), adjoint(p), p);
    report.entries.push_back(std::move(idem));
    report.entries.push_back(std::move(self));
  }

  for (const Edge& e : E.edges()) {
    const CKTerm se_star = adjoint(image(map, e.id));
    for (const Edge& f : E.edges()) {
      CKTerm rhs = e.id == f.id ? image(map, e.source) : CKTerm{};
      report.entries.push_back(compare("ck2 " + e.id.str() + "," + f.id.str(),
                                       multiply(se_star, image(map, f.id), ctx), rhs));
    }
  }

  for (const VertexId& v : E.vertices()) {
    const auto receivers = E.receivers(v);
    if (receivers.empty()) continue;
    CKTerm sum;
    for (const EdgeId& e : receivers) {
      const CKTerm& se = image(map, e);
      sum += multiply(se, adjoint(se), ctx);
    }
    const CKTerm& p = image(map, v);
    RelationEntry entry = compare("ck3 " + v.str(), p, sum);
    if (entry.status == RelationStatus::Failed && p.size() == 1) {
      // p~_v = p_w for a single projection: compare modulo the summation
      // relation at w when w has several receivers in the context.
      const auto& letters = p.terms().begin()->first.letters();
      if (letters.size() == 1 && letters[0].kind == LetterKind::Projection) {
        const VertexId w(letters[0].id);
        if (ctx.graph().receivers(w).size() > 1) {
          CKTerm expanded = expand_ck3(p, w, ctx);
          entry = compare("ck3 " + v.str(), expanded, sum, "compared after expanding p(" +
                                                               w.str() + ")");
        }
      }
    }
    report.entries.push_back(std::move(entry));
  }

  for (const VertexId& v : E.vertices()) {
    const CKTerm& p = image(map, v);
    RelationEntry entry{"nonzero " + v.str(), RelationStatus::Recorded, {},
                        "image " + p.to_string() + " is a generator projection of C*(F)"};
    if (p.is_zero()) {
      entry.status = RelationStatus::Failed;
      entry.difference = CKTerm::p(ctx, v);
      entry.note = "image is zero";
    }
    report.entries.push_back(std::move(entry));
  }

  if (!entrance_violation(E)) {
    for (const SimpleLoop& loop : disjoint_simple_loops(E)) {
      CKTerm prod = image(map, loop.edges().front());
      for (std::size_t i = 1; i < loop.edges().size(); ++i)
        prod = multiply(prod, image(map, loop.edges()[i]), ctx);
      report.entries.push_back({"spectrum " + loop.to_string(), RelationStatus::Delegated, {},
                                "loop image " + prod.to_string() +
                                    "; circle spectrum is checked numerically"});
    }
  }
  return report;
}

RelationReport verify_witness(const EntranceWitness& w, const CKContext& ctx) {
  validate_witness(ctx.graph(), w);
  const CKTerm sa = CKTerm::path(ctx, w.alpha);
  const CKTerm sb = CKTerm::path(ctx, w.beta);
  RelationReport report;
  report.entries.push_back(compare("isometry alpha", multiply(adjoint(sa), sa, ctx),
                                   CKTerm::p(ctx, w.alpha.source())));
  report.entries.push_back(compare("isometry beta", multiply(adjoint(sb), sb, ctx),
                                   CKTerm::p(ctx, w.beta.source())));
  report.entries.push_back(
      compare("orthogonal alpha,beta", multiply(adjoint(sa), sb, ctx), CKTerm{}));
  return report;
}

RelationReport verify_loop_identities(const AugmentedGraphSpec& spec, const GeneratorMap& map,
                                      const CKContext& ctx) {
  RelationReport report;
  for (const LoopReplacement& r : spec.replacements) {
    const std::size_t n = r.loop.length();
    for (std::size_t i = 1; i <= n; ++i) {
      const EdgeId& e = r.loop.edge(i);
      const CKTerm& s = image(map, e);
      const CKTerm s_star = adjoint(s);
      const VertexId& next = r.loop.vertex(i % n + 1);
      report.entries.push_back(compare("s~*s~ " + e.str(), multiply(s_star, s, ctx),
                                       CKTerm::p(ctx, r.loop.vertex(i))));
      report.entries.push_back(
          compare("s~s~* " + e.str(), multiply(s, s_star, ctx), CKTerm::p(ctx, next)));
    }
    CKTerm prod = image(map, r.loop.edge(n));
    for (std::size_t i = n - 1; i >= 1; --i) prod = multiply(prod, image(map, r.loop.edge(i)), ctx);
    const EdgeId& f1 = r.f_edges.front().id;
    const CKTerm expected =
        CKTerm::from_word(ctx, {Letter::s(f1.str()), Letter::t(r.tail.ns, static_cast<int>(n)),
                                Letter::s_star(f1.str())});
    report.entries.push_back(compare("loop " + r.loop.to_string(), prod, expected));
  }
  return report;
}

std::string render(const RelationReport& report) {
  std::ostringstream out;
  for (const auto& e : report.entries) {
    out << to_string(e.status) << "  " << e.id;
    if (e.status == RelationStatus::Failed) out << "  difference: " << e.difference.to_string();
    if (!e.note.empty()) out << "  (" << e.note << ")";
    out << '\n';
  }
  return out.str();
}

}  // namespace afembed
