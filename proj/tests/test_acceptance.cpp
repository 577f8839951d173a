// One line per acceptance criterion; exit status 1 if any fails.
#include <iostream>

#include "acceptance.hpp"
#include "coset_topo/parallel.hpp"

int main(int argc, char** argv) {
  const std::string catalog = argc > 1 ? argv[1] : ctopo::cli::default_catalog_dir();
  try {
    const auto results = ctopo::cli::run_acceptance(catalog, ctopo::default_threads());
    for (const auto& r : results) std::cout << ctopo::cli::format_line(r) << '\n';
    return ctopo::cli::all_passed(results) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cout << "[FAIL] catalog: " << e.what() << '\n';
    return 1;
  }
}
