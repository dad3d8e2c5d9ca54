#include "se2sr/config.hpp"

// RunConfig is header-only; this translation unit pins its definitions into
// the library so downstream consumers get one copy of the defaults.
namespace se2sr {
static_assert(sizeof(RunConfig) > 0, "RunConfig must be complete");
}  // namespace se2sr
