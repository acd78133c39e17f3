#include "gapslab/parallel.hpp"

#include "gapslab/config.hpp"

namespace gapslab {

int resolved_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

int Exec::resolved_workers() const { return gapslab::resolved_workers(workers); }

}  // namespace gapslab
