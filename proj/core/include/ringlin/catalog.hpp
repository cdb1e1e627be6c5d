#pragma once

#include <string>
#include <vector>

#include "ringlin/ring.hpp"

namespace ringlin {

// Named rings used throughout the test battery and the `catalog` CLI verb.
struct CatalogEntry {
  std::string name;
  RingPtr ring;
  std::string note;
};

const std::vector<CatalogEntry>& catalog();

// Looks up a named entry; also accepts generic "zN" for Z_N.
RingPtr catalog_ring(const std::string& name);

}  // namespace ringlin
