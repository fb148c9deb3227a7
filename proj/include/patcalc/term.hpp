#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace patcalc {

using Name = std::string;
using NameSet = std::set<Name>;

/// Raised when an operation is called outside its documented domain
/// (e.g. matching a pattern against a term that shares its variables).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class PatternKind : std::uint8_t { Var, Const, App };

/// Binder shapes: a variable, or a constant applied to patterns.
///
/// The left spine of an applied pattern always ends in a constant; the
/// constructor rejects anything else. Linearity is not enforced here because
/// non-linear binders are legal syntax that simply never match.
class Pattern {
public:
    static Pattern var(Name name);
    static Pattern constant(Name name);
    static Pattern app(Pattern head, Pattern arg);

    PatternKind kind() const { return node_->kind; }
    bool is_var() const { return kind() == PatternKind::Var; }
    bool is_const() const { return kind() == PatternKind::Const; }
    bool is_app() const { return kind() == PatternKind::App; }
    bool is_data() const { return !is_var(); }

    const Name& name() const;
    const Pattern& head() const;
    const Pattern& arg() const;

    /// Variables in left-to-right order, repeats included.
    const std::vector<Name>& var_occurrences() const { return node_->occurrences; }
    /// Sorted, duplicate-free.
    const std::vector<Name>& vars() const { return node_->vars; }
    std::size_t size() const { return node_->size; }

    bool same_node(const Pattern& other) const { return node_ == other.node_; }

private:
    struct Node {
        PatternKind kind;
        Name name;
        std::shared_ptr<const Pattern> head;
        std::shared_ptr<const Pattern> arg;
        std::vector<Name> occurrences;
        std::vector<Name> vars;
        std::size_t size = 1;
    };
    explicit Pattern(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

bool operator==(const Pattern& a, const Pattern& b);
/// Structural order (kind, then names, then components), for use as a map key.
bool operator<(const Pattern& a, const Pattern& b);

enum class TermKind : std::uint8_t { Var, Const, Abs, App };

/// Immutable calculus term. Copies share structure.
class Term {
public:
    static Term var(Name name);
    static Term constant(Name name);
    static Term abs(Pattern binder, Term body);
    static Term app(Term fun, Term arg);

    TermKind kind() const { return node_->kind; }
    bool is_var() const { return kind() == TermKind::Var; }
    bool is_const() const { return kind() == TermKind::Const; }
    bool is_abs() const { return kind() == TermKind::Abs; }
    bool is_app() const { return kind() == TermKind::App; }

    const Name& name() const;
    const Pattern& binder() const;
    const Term& body() const;
    const Term& fun() const;
    const Term& arg() const;

    /// Sorted free variables, cached at construction.
    const std::vector<Name>& fv() const { return node_->fv; }
    bool has_free(const Name& x) const;
    /// Number of atom occurrences (variables and constants), binder patterns included.
    std::size_t size() const { return node_->size; }

    bool same_node(const Term& other) const { return node_ == other.node_; }

private:
    struct Node {
        TermKind kind;
        Name name;
        std::optional<Pattern> binder;
        std::shared_ptr<const Term> left;
        std::shared_ptr<const Term> right;
        std::vector<Name> fv;
        std::size_t size = 1;
    };
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Finite map from variables to terms; lookup outside the domain is the identity.
class Substitution {
public:
    using Map = std::map<Name, Term>;

    Substitution() = default;
    Substitution(std::initializer_list<std::pair<const Name, Term>> init) : map_(init) {}
    explicit Substitution(Map m) : map_(std::move(m)) {}

    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }
    bool contains(const Name& x) const { return map_.count(x) != 0; }
    /// θx, with x itself when x is outside the domain.
    Term operator()(const Name& x) const;
    const Term* find(const Name& x) const;
    void bind(Name x, Term t) { map_.insert_or_assign(std::move(x), std::move(t)); }
    void erase(const Name& x) { map_.erase(x); }

    NameSet domain() const;
    /// dom(θ) together with the free variables of every bound term.
    NameSet vars() const;

    const Map& bindings() const { return map_; }
    auto begin() const { return map_.begin(); }
    auto end() const { return map_.end(); }

private:
    Map map_;
};

NameSet free_vars(const Term& m);
bool is_free_in(const Name& x, const Term& m);

bool alpha_eq(const Term& m, const Term& n);
bool alpha_eq(const Substitution& a, const Substitution& b);

/// A string that is equal for two terms exactly when they are alpha-equivalent.
std::string canonical_key(const Term& m);

/// Capture-avoiding simultaneous substitution.
Term apply_subst(const Substitution& theta, const Term& m);

/// νθ: x ↦ ν(θx) on dom(θ), x ↦ νx on dom(ν) \ dom(θ).
Substitution subst_compose(const Substitution& nu, const Substitution& theta);
Substitution subst_restrict(const Substitution& theta, const NameSet& xs);
/// Defined only when the domains are disjoint.
std::optional<Substitution> subst_disjoint_union(const Substitution& a, const Substitution& b);

/// c M1 ... Mn for n >= 0.
bool is_data_term(const Term& m);
bool is_linear(const Pattern& p);
NameSet pattern_vars(const Pattern& p);

/// Reads a pattern as the term it denotes.
Term pattern_to_term(const Pattern& p);
Pattern rename_pattern(const Pattern& p, const std::map<Name, Name>& renaming);

/// Appends a numeric suffix to the base name, skipping anything in `avoid`.
Name fresh_name(const Name& base, const NameSet& avoid);

/// Rebinds `abs` (an abstraction) to the given pattern, returning the body
/// under that binder, or nothing when the two binders are not alpha-compatible.
std::optional<Term> body_under(const Term& abs, const Pattern& binder);

/// Brings two abstractions under one common binder. The binder's variables
/// avoid `avoid` and the free variables of both terms.
struct CommonBinder {
    Pattern binder;
    Term left_body;
    Term right_body;
};
std::optional<CommonBinder> common_binder(const Term& a, const Term& b, const NameSet& avoid = {});

/// Renames the binder of an abstraction so its variables avoid `avoid`.
Term rebind_apart(const Term& abs, const NameSet& avoid);

}  // namespace patcalc
