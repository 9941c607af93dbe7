// Which quadratics F make F^2 (t^2 - 1) Pellian, and what do the solutions look like.
#include "pellpoly/pellpoly.hpp"

#include <iostream>

int main()
{
    using namespace pellpoly;
    const Poly D = parse_poly("t^2 - 1");
    for (const auto& [F, n] : enumerate_square_factors(D, 2)) {
        SquareTimesQuery q = is_square_times_pellian(D, F);
        std::cout << "F = " << F << "  (divides v_" << n << ")\n"
                  << "  X = " << q.solution->first << "\n"
                  << "  Y = " << q.solution->second << "\n";
    }
}
