#ifndef GSTOWER_POINTS_HPP
#define GSTOWER_POINTS_HPP

// Exhaustive enumeration of the GF(p^2)-rational points of the affine tower
// models, fiber by fiber over the base line, with the complete-splitting
// checks that go with it.

#include <cstdint>
#include <string>
#include <vector>

#include "gstower/field.hpp"
#include "gstower/tower.hpp"

namespace gstower::points {

using gf::FieldElement;
using tower::TowerSpec;

// One rational point of the affine model: a value for every generator,
// aligned with spec.generators() (x1 first).
struct PointRecord {
    std::vector<FieldElement> values;
    const FieldElement& value_of(const TowerSpec& spec, const tower::GenId& id) const;
};

struct FiberReport {
    FieldElement base;
    std::uint64_t count = 0;
    bool split = false;
    bool all_outside_kminus = true;
    std::vector<PointRecord> points; // filled only when collecting
};

// All y with y^p + y = x^(p+1)/(x^p+x); PoleAtInput when x lies in K_-.
std::vector<FieldElement> next_coordinate(const FieldElement& x);

// Depth-first solve along the dependency order.  A branch dies when a
// denominator vanishes or an equation has no root; split means every branch
// produced exactly p children all the way down.
FiberReport enumerate_fiber(const TowerSpec& spec, const FieldElement& base,
                            bool collect = true);

struct CensusRow {
    FieldElement base;
    std::uint64_t fiber_size = 0;
    bool split = false;
    bool values_outside_kminus = true;
};

struct Census {
    std::vector<CensusRow> rows; // bases outside K_-, canonical order
    std::uint64_t total = 0;
    bool all_split = false;
};

// Fiber sizes over every base outside K_-.
Census count_split_points(const TowerSpec& spec, bool parallel = false);

// Fiber cardinality over a split point.  Exact for the chain and the reduced
// closure model; an upper bound for full closure models, whose naive affine
// system overcounts the field degree.
struct DegreeResult {
    bool exact = false;
    std::uint64_t value = 0;
};
DegreeResult degree_via_fiber(const TowerSpec& spec);

// Checks, over every enumerated split point of a closure model, that each
// generator value v stays outside K_- and that y^p + y = g(v + a) splits
// into p linear factors for every shift a in K_-.
struct SplitValuesReport {
    bool passed = false;
    std::uint64_t points = 0;
    std::uint64_t values_checked = 0;
    std::string counterexample; // empty when passed
};
SplitValuesReport verify_split_values(const TowerSpec& spec);

} // namespace gstower::points

#endif
