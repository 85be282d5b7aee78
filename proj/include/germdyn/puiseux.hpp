#pragma once

#include "germdyn/biseries.hpp"
#include "germdyn/tower.hpp"

namespace germdyn {

// Raised when stored branch precision cannot resolve a requested quantity.
struct Indeterminate : std::runtime_error {
  explicit Indeterminate(const std::string& what, Rat hint = Rat(0))
      : std::runtime_error(what), required_precision(std::move(hint)) {}
  Rat required_precision;
};

// A conjugacy class of branches of a plane curve germ at the origin.  With
// dep == Y the parameterization is x(s) = xi * s^ram, y(s) = sum c_k s^k over
// dep_terms; dep == X swaps the roles of x and y.  The residue tower groups
// conjugate branches whose coefficients leave the working field.
struct BranchGroup {
  Axis dep = Axis::Y;
  unsigned mult = 1;  // multiplicity of the defining factor in the input
  unsigned ram = 1;
  Tower tower;
  AlgNum xi;  // unit
  std::vector<std::pair<long long, AlgNum>> dep_terms;  // ascending s-exponents
  long long sprec = 0;       // exponents <= sprec are exact
  bool exact_tail = false;   // dep_terms is the entire expansion
  bool tail_regular = false; // no further ramification or field jumps beyond sprec

  long long residue_degree() const { return tower.total_degree(); }
  // multiplicity at 0 of a single branch in the group
  unsigned branch_mult0() const;
  std::string str() const;
};

struct BranchDecomposition {
  std::vector<BranchGroup> groups;
  bool unsplit = false;  // some group has a nontrivial residue tower
  // sum of mult * residue_degree * branch_mult0 over groups (= ord of the
  // input when complete)
  long long mult0_sum() const;
};

// All branches at the origin of an exact polynomial vanishing there, expanded
// to the given exponent precision (in units of the independent variable).
BranchDecomposition branches(const BiSeries& phi, const Rat& precision);

// Working-field branch with an exact defining polynomial; the form used by
// valuations.  Single conjugacy class, trivial residue tower.
struct PuiseuxBranch {
  Axis dep = Axis::Y;
  unsigned ram = 1;
  Cyclo xi;  // unit scale of the independent variable
  std::vector<std::pair<long long, Cyclo>> terms;  // ascending s-exponents
  long long sprec = 0;
  bool exact_tail = false;
  bool tail_regular = false;
  BiSeries defining;  // exact, irreducible germ at 0

  unsigned mult0() const;
  Rat first_exponent() const;  // leading dep-exponent in x-units (oo -> 0 terms means axis)
  bool is_axis() const { return terms.empty(); }
  // graph curve y = p(x) (or x = p(y)): ram 1, exact integral expansion
  bool is_graph() const { return ram == 1 && exact_tail; }
  BiSeries graph_poly() const;  // p as a BiSeries in the independent variable
  std::string str() const;
};

// Build the unique branch of an irreducible curve expression; throws if the
// curve has several branches at 0 or needs a residue extension.
PuiseuxBranch branch_from_curve(const BiSeries& curve, const Rat& precision);
PuiseuxBranch axis_branch(Axis dep);  // dep = Y: the curve {y = 0}
// Re-expand to at least the requested precision (x-exponent units).
void ensure_precision(PuiseuxBranch& b, const Rat& precision);

struct IntersectionValue {
  bool infinite = false;
  Rat value;  // s-order divided by ram (x-exponent units) times ram... raw I
};

// Local intersection multiplicity at 0 via parameterization substitution,
// summed over the branches of phi: I(phi, psi).  Infinite iff a branch of phi
// divides psi (decided by a Bezout degree bound).
IntersectionValue intersection_multiplicity(const BiSeries& phi, const BiSeries& psi);

// Intersection of a single working-field branch with an exact polynomial.
IntersectionValue branch_poly_intersection(const PuiseuxBranch& b, const BiSeries& psi);

// Skewness of the meet of the two normalized curve semivaluations:
// I(B1, B2) / (m0(B1) m0(B2)); infinite iff the branches coincide.
struct ContactValue {
  bool infinite = false;
  Rat value;
};
ContactValue contact_skewness(const PuiseuxBranch& b1, const PuiseuxBranch& b2);

// ord_x Res_y(phi, psi): total intersection multiplicity along the fiber
// x = 0.  Both inputs must be y-regular and coprime.
unsigned resultant_multiplicity_oracle(const BiSeries& phi, const BiSeries& psi);

// Per-conjugacy-piece substitution orders of psi along a group's
// parameterization (splits resolved internally): pairs (residue degree, ord),
// ord empty when it exceeds the bound.
struct OrdPiece {
  long long resdeg;
  std::optional<long long> ord;
};
std::vector<OrdPiece> group_substitution_orders(const BranchGroup& g,
                                                const BiSeries& psi,
                                                long long bound);

}  // namespace germdyn
