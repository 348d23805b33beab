// Draws a random clique-sum of planar and treewidth-3 pieces and prints the
// certified bound next to the observed crossings.
//
//   compose_demo [pieces] [max_vertices] [seed] [out.svg]

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "rcn/rcn.hpp"

int main(int argc, char** argv)
{
    using namespace rcn;
    std::size_t pieces = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 6;
    std::size_t max_vertices = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 120;
    std::uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 1;

    GeneratedDecomposition gd = gen_cliquesum_decomposition(pieces, max_vertices, seed);
    ComposeResult r = draw_single_crossing_free(gd.graph, gd.decomposition, seed);
    const BoundReport& rep = r.report;

    std::cout << "graph: " << rep.vertices << " vertices, " << rep.edges << " edges, max degree " << rep.delta << "\n";
    for (const PieceBound& p : rep.pieces)
        std::cout << "  piece " << p.index + 1 << " (" << p.kind << ", " << p.method << "): " << p.crossings
                  << " crossings, bound " << p.bound << "\n";
    std::cout << "crossings " << rep.observed << " <= " << rep.bound << " = " << rep.formula << " with t = " << *rep.t
              << (rep.ok() ? "" : "  VIOLATED") << "\n";
    const ChargeSplit& c = rep.charges;
    std::cout << "charges: inherited " << c.inherited << ", case 1 " << c.case1 << ", 2a " << c.case2a << ", 2b "
              << c.case2b << ", 3 " << c.case3 << ", 4 " << c.case4 << "\n";

    if (argc > 4) {
        SvgOptions opt;
        opt.labels = false;
        opt.crossing_markers = true;
        std::ofstream(argv[4]) << render_svg(r.drawing, opt);
        std::cout << "wrote " << argv[4] << "\n";
    }
    return rep.ok() ? 0 : 1;
}
