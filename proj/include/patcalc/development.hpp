#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "patcalc/term.hpp"

namespace patcalc {

// ---------------------------------------------------------------------------
// Developments M ▷ N and substitution developments ν ▶ θ

enum class DevRule { DRefl, DAbs, DApp, DBeta };
std::string to_string(DevRule r);

struct DevNode;
using DevProof = std::shared_ptr<const DevNode>;

/// Pointwise developments between two substitutions with the same domain.
struct SubstDevProof {
    std::map<Name, DevProof> per_variable;

    NameSet domain() const;
    Substitution source() const;
    Substitution target() const;
};

/// A derivation node. Every node records its own endpoints, so a proof can
/// be replayed bottom-up without recomputing anything from the root.
///
/// Slots by rule:
///   DRefl  -
///   DAbs   binder, body
///   DApp   fun, arg
///   DBeta  binder, body (M ▷ M'), subst (τ ▶ τ'), witness τ
struct DevNode {
    DevRule rule;
    Term source;
    Term target;
    std::optional<Pattern> binder;
    DevProof body;
    DevProof fun;
    DevProof arg;
    Substitution witness;
    SubstDevProof subst;
};

DevProof dev_refl(const Term& m);
DevProof dev_abs(const Pattern& binder, DevProof body);
DevProof dev_app(DevProof fun, DevProof arg);
/// (\binder.body.source) argument ▷ τ'(body.target). The match witness is
/// recomputed and must agree with the sources of `subst`. When `target` is
/// given it must be alpha-equal to the computed one and is used instead.
DevProof dev_beta(const Pattern& binder, const Term& argument, DevProof body, SubstDevProof subst,
                  const std::optional<Term>& target = std::nullopt);

/// Independent replay: every node's premises hold and its endpoints are the
/// ones its rule produces (up to alpha).
bool check_development(const DevProof& d);
bool check_subst_development(const SubstDevProof& sd);


/// Number of contracted redexes (DBeta nodes), counting inside substitution premises.
std::size_t beta_count(const DevProof& d);

std::optional<DevProof> is_development(const Term& m, const Term& n);
std::optional<SubstDevProof> is_subst_development(const Substitution& nu, const Substitution& theta);

/// Every development of m, one derivation per choice of contracted redexes.
/// DRefl is used for every untouched subterm, so the first entry is DRefl(m).
std::vector<DevProof> all_developments(const Term& m);

// ---------------------------------------------------------------------------
// Internal developments M ⊳int N and M ⊳int_p N

enum class IntRule {
    IRefl,
    IAbs,
    IApp1,
    IApp2,
    PMatch,
    PConst,
    PNoCData,
    PCDataNo1,
    PCDataNo2,
    PCDataNo3,
    /// c ⊳int_{d q} c. A bare constant against an applied data pattern has no
    /// derivation among the other rules, which leaves the per-pattern
    /// h-development clause unprovable for constants.
    PConstShort,
};
std::string to_string(IntRule r);
bool is_pattern_rule(IntRule r);

/// Which rule set a search may use. `Paper` omits PConstShort.
enum class IntRuleSet { Paper, Extended };

struct IntNode;
using IntDevProof = std::shared_ptr<const IntNode>;

/// Slots by rule:
///   IRefl        -
///   IAbs         binder, dev_left (body)
///   IApp1        int_left (fun), dev_right (arg)
///   IApp2        binder, dev_left (body), int_right (arg, indexed by binder)
///   PMatch       dev_left
///   PConst       int_left (plain)
///   PNoCData     int_left (plain)
///   PCDataNo1    int_left (indexed by head of pattern), dev_right
///   PCDataNo2    dev_left, int_right (indexed by argument of pattern)
///   PCDataNo3    dev_left, dev_right
///   PConstShort  -
/// `index` is set exactly on the pattern-indexed rules.
struct IntNode {
    IntRule rule;
    Term source;
    Term target;
    std::optional<Pattern> index;
    std::optional<Pattern> binder;
    IntDevProof int_left;
    IntDevProof int_right;
    DevProof dev_left;
    DevProof dev_right;
};

IntDevProof int_refl(const Term& m);
IntDevProof int_abs(const Pattern& binder, DevProof body);
IntDevProof int_app1(IntDevProof fun, DevProof arg);
IntDevProof int_app2(const Pattern& binder, DevProof body, IntDevProof arg);
IntDevProof p_match(const Pattern& p, DevProof d);
IntDevProof p_const(const Pattern& p, IntDevProof inner);
IntDevProof p_no_cdata(const Pattern& p, IntDevProof inner);
IntDevProof p_cdata_no1(const Pattern& p, IntDevProof head, DevProof arg);
IntDevProof p_cdata_no2(const Pattern& p, DevProof head, IntDevProof arg);
IntDevProof p_cdata_no3(const Pattern& p, DevProof head, DevProof arg);
IntDevProof p_const_short(const Pattern& p, const Term& constant);

/// M ⊳int_p M. Always exists with PConstShort available.
IntDevProof int_refl_p(const Pattern& p, const Term& m);

bool check_internal(const IntDevProof& d);
/// The development an internal development denotes.
DevProof erase(const IntDevProof& d);

std::optional<IntDevProof> is_internal_development(const Term& m, const Term& n,
                                                   IntRuleSet rules = IntRuleSet::Extended);
/// Requires fv(p) disjoint from fv(m); throws PreconditionError otherwise.
std::optional<IntDevProof> is_internal_development_p(const Pattern& p, const Term& m, const Term& n,
                                                     IntRuleSet rules = IntRuleSet::Extended);

/// Every internal derivation from m, built rule by rule. Different
/// derivations may share a target. The first entry is IRefl(m).
std::vector<IntDevProof> all_internal_developments(const Term& m, IntRuleSet rules = IntRuleSet::Extended);
/// Every ⊳int_p derivation from m.
std::vector<IntDevProof> all_internal_developments_p(const Pattern& p, const Term& m,
                                                     IntRuleSet rules = IntRuleSet::Extended);

// ---------------------------------------------------------------------------
// Lemmas with constructive content

struct MatchAfterDev {
    Substitution theta;
    SubstDevProof subst;
};

/// Given d : M ▷ N and p ≪ M ↦ ν, returns θ with p ≪ N ↦ θ and ν ▶ θ.
MatchAfterDev match_after_dev(const DevProof& d, const Pattern& p, const Substitution& nu);

/// Given ν ▶ θ and M ▷ N, builds νM ▷ θN. Binders are renamed apart from
/// var(ν) ∪ var(θ) on the way down.
DevProof subst_apply_dev(const SubstDevProof& sd, const DevProof& d);

/// For a development whose source is alpha-equal to the abstraction `abs`
/// (so DRefl or DAbs), the development of the body stated under the binder
/// of `abs` itself.
DevProof body_development(const DevProof& d, const Term& abs);

/// Renames free variables throughout a development.
DevProof rename_dev(const DevProof& d, const std::map<Name, Name>& renaming);

}  // namespace patcalc
