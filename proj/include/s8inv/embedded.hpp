#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace s8inv {

// Suite files compiled into the binary; empty view for unknown names.
std::string_view embedded_suite(std::string_view name);
const std::vector<std::string>& embedded_suite_names();

}  // namespace s8inv
