// BGG page of the Siegel threefold datum (GSp4, mu = (1,1,1)) for a dominant
// weight given on the command line, followed by the Euler-characteristic
// certification of the truncated standard complex over Q.
//
//   sample_siegel            lambda = 0
//   sample_siegel 2 1 0      lambda = 2e1 + e2

#include <cstdlib>
#include <iostream>

#include "hodgep/complexes.hpp"

using namespace hodgep;

int main(int argc, char** argv) {
  Weight lambda{0, 0, 0};
  if (argc == 4)
    for (int k = 0; k < 3; ++k) lambda[k] = std::atoll(argv[k + 1]);
  else if (argc != 1) {
    std::cerr << "usage: sample_siegel [l1 l2 l0]\n";
    return 1;
  }
  try {
    RootSystem rs(type_C(2, true));
    auto pd = levi_subset(rs, {1, 1, 1});
    auto page = bgg_page(pd, lambda, 3, std::nullopt, 5);
    std::cout << "lambda " << to_string(lambda) << ", H " << to_string(page.H) << "\n";
    for (const auto& row : page.rows)
      for (std::size_t k = 0; k < row.entries.size(); ++k) {
        const auto& e = row.entries[k];
        std::cout << "  a = " << row.a << "  w = " << word_string(e.w.word) << "  w.lambda = " << to_string(e.w_dot_lambda)
                  << "  dim W = " << e.levi_dim << "  " << row.summands[k] << "\n";
      }
    std::cout << "p-small for p = 5: " << (*page.p_small ? "yes" : "no") << "\n";
    auto cx = std_complex(pd, weyl_module(rs, Rationals{}, lambda), 3);
    auto euler = euler_character_check(cx, page);
    std::cout << "Euler characteristic, Sym-degree <= 3: " << (euler.pass ? "agrees" : "DIFFERS") << " on "
              << euler.checked << " (degree, weight) pairs\n";
    return euler.pass ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
