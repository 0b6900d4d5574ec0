#ifndef GSTOWER_TOWER_HPP
#define GSTOWER_TOWER_HPP

// Generator/relation descriptions of the recursive tower T_n over GF(p^2)
// and of its Galois closure, as acyclic systems of Artin-Schreier
// adjunctions wp(g) = g(parent + shift).

#include <optional>
#include <string>
#include <vector>

#include "gstower/field.hpp"

namespace gstower::tower {

using gf::FieldCtxPtr;
using gf::FieldElement;

// A generator of the tower: either a chain variable x<level> or a closure
// variable u[c1,...,cm] indexed by a vector over K_-.
struct GenId {
    enum class Kind { X, U };
    Kind kind = Kind::X;
    int level = 1;                   // for X
    std::vector<FieldElement> index; // for U

    static GenId x(int level);
    static GenId u(std::vector<FieldElement> index);

    bool operator==(const GenId& o) const;
    bool operator!=(const GenId& o) const { return !(*this == o); }
    std::string str() const; // "x1", "u[t]", "u[0,2t]"
};

// Relation attached to a generator g: wp(g) = g(parent + shift).
struct ParentRef {
    GenId parent;
    FieldElement shift;
    std::string expr_str() const; // "x2+t"
};

struct GenDecl {
    GenId id;
    std::optional<ParentRef> relation; // absent only for x1
};

enum class Variant { Gs, ClosureFull, ClosureReduced };

std::string variant_str(Variant v);
Variant variant_from_str(const std::string& s);

class TowerSpec {
  public:
    std::int64_t p() const { return p_; }
    int n() const { return n_; }
    Variant variant() const { return variant_; }
    const std::optional<FieldElement>& beta() const { return beta_; }
    const FieldCtxPtr& field() const { return field_; } // GF(p^2)

    // generators in dependency order, x1 first
    const std::vector<GenDecl>& generators() const { return gens_; }
    std::size_t total_generators() const { return gens_.size(); }
    std::size_t algebraic_generators() const { return gens_.size() - 1; }

    int find(const GenId& id) const; // position, -1 if absent

    std::string to_json() const;
    static TowerSpec from_json(const std::string& text);

  private:
    friend TowerSpec gs_tower(std::int64_t p, int n);
    friend TowerSpec closure_tower(std::int64_t p, int n, const FieldElement& beta,
                                   bool reduced);
    friend TowerSpec closure_subsystem(std::int64_t p,
                                       const std::vector<std::vector<FieldElement>>& indices);

    std::int64_t p_ = 0;
    int n_ = 0;
    Variant variant_ = Variant::Gs;
    std::optional<FieldElement> beta_;
    FieldCtxPtr field_;
    std::vector<GenDecl> gens_;
};

// The chain x1 -> x2 -> ... -> xn with wp(x_{i+1}) = g(x_i).
TowerSpec gs_tower(std::int64_t p, int n);

// Closure model at level n >= 3 over base element beta in K_- \ {0}.
// Full: x2 plus u_c for every c in K_-^m, 1 <= m <= n-2 (the zero-prefix
// chain u_{0^m} plays the role of x_{m+2}).  Reduced: only supported at
// n == 3, generators {x2, u[0], u[beta]}.
TowerSpec closure_tower(std::int64_t p, int n, const FieldElement& beta, bool reduced);

// Minimal closure-style system containing the given u-indices and all their
// ancestors; used to check identities without materializing a full level.
TowerSpec closure_subsystem(std::int64_t p,
                            const std::vector<std::vector<FieldElement>>& indices);

// Topological order of the generators, deterministic (ties broken by the
// canonical index order); throws CyclicDependency on malformed systems.
std::vector<GenId> dependency_order(const TowerSpec& spec);

// The nine index sorts of the ramification analysis, decided in the priority
// order 1, 2, 3, 8, 9, 6, 7, 4, 5 (first match wins).
int classify_index(const std::vector<FieldElement>& c);

} // namespace gstower::tower

#endif
