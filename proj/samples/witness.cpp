// Library walk-through: build tau from dual coordinates, take its
// orthogonal complement in E8, recognize the summands, read off the knot data.

#include <iostream>

#include "e8cm/surgery.hpp"

int main() {
    using namespace e8cm;
    const Tau t = Tau::from_dual({1, 0, 0, 1, 0, 0, 0, 0}, {});
    std::cout << "E8-changemaker: " << std::boolalpha << is_e8_changemaker(t) << ", |tau| = " << t.norm << '\n';

    const auto comp = orthogonal_complement(ambient_lattice(t.sigma.size()), t.ambient());
    std::cout << "complement rank " << comp.lattice.rank() << ", discriminant " << discriminant(comp.lattice) << '\n';

    if (auto shape = recognize_linear(comp.lattice)) {
        std::cout << "summands:";
        for (auto [p, q] : *shape) std::cout << " Lambda(" << p << "," << q << ")";
        std::cout << '\n';
    }

    // knot data for a smaller tau
    const auto k = knot_invariants(Tau::from_dual({0, 1, 0, 0, 0, 0, 0, 0}, {}));
    std::cout << "s* = e2*: p = " << k.p << ", genus " << k.genus << ", torsion " << to_string(k.torsion) << '\n';
    return 0;
}
