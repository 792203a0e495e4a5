#pragma once

namespace idregret {

inline const char* version() { return "0.1.0"; }

}  // namespace idregret
