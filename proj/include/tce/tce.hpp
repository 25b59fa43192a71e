#pragma once

#include "tce/error.hpp"
#include "tce/exactnum.hpp"
#include "tce/gateway.hpp"
#include "tce/geom.hpp"
#include "tce/harness.hpp"
#include "tce/parallel.hpp"
#include "tce/pipeline.hpp"
#include "tce/service.hpp"
#include "tce/solver.hpp"
#include "tce/svg.hpp"
#include "tce/tangram.hpp"
#include "tce/verify.hpp"

namespace tce {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tce
