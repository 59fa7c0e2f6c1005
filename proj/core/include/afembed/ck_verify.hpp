#pragma once

#include <string>
#include <vector>

#include "afembed/ck_term.hpp"
#include "afembed/embedding.hpp"
#include "afembed/loops.hpp"

namespace afembed {

enum class RelationStatus {
  Proved,
  Failed,
  /// Not a rewrite fact; checked numerically instead (spectrum obligations).
  Delegated,
  /// Hypothesis noted but not provable by rewriting (nonvanishing of p~_v).
  Recorded,
};

std::string to_string(RelationStatus s);

struct RelationEntry {
  std::string id;
  RelationStatus status;
  /// lhs - rhs in normal form; nonzero exactly for failed entries.
  CKTerm difference;
  std::string note;
};

struct RelationReport {
  std::vector<RelationEntry> entries;

  bool all_proved() const;  // no Failed entries
  std::size_t count(RelationStatus s) const;
  const RelationEntry* find(const std::string& id) const;
};

/// Checks the Cuntz-Krieger relations for the mapped family {p~_v, s~_e}:
///   ck1 <v>      p~_v p~_v = p~_v = p~_v^*
///   ck2 <e>,<f>  s~_e^* s~_f = delta_{ef} p~_{s(e)}
///   ck3 <v>      p~_v = sum_{r(e)=v} s~_e s~_e^*   (0 < |r^{-1}(v)|)
/// ck3 at a vertex with several receivers in the context is compared after
/// expand_ck3 on the projection side. Each entry-less loop of the domain gets
/// a Delegated spectrum entry and each vertex a Recorded nonvanishing entry.
RelationReport verify_ck_family(const GeneratorMap& map, const CKContext& ctx);

/// For a witness (alpha, beta) in E:
///   s_a^* s_a = p_{s(a)},  s_b^* s_b = p_{s(b)},  s_a^* s_b = 0.
/// Throws PreconditionError for an invalid witness.
RelationReport verify_witness(const EntranceWitness& w, const CKContext& ctx);

/// The identities the embedding rests on, per replaced loop and index i:
///   s~(e_i)^* s~(e_i) = p(u_i),  s~(e_i) s~(e_i)^* = p(u_{i+1}),
///   s~(e_n) ... s~(e_1) = s(f_1) t^n s*(f_1).
RelationReport verify_loop_identities(const AugmentedGraphSpec& spec, const GeneratorMap& map,
                                      const CKContext& ctx);

/// Text rendering, one line per entry.
std::string render(const RelationReport& report);

}  // namespace afembed
