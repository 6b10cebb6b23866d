// Non-x86 builds: avx2_available() is false, so this table is never selected;
// the symbol only has to exist.

#include "grassmatch/kernels.hpp"

namespace grassmatch::kernels {

const Table& avx2() { return scalar(); }

} // namespace grassmatch::kernels
