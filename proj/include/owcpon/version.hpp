#pragma once

#include <string_view>

#ifndef OWCPON_VERSION
#define OWCPON_VERSION "0.0.0"
#endif

namespace owcpon {
inline constexpr std::string_view kToolkitVersion = OWCPON_VERSION;
}
