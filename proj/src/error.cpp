#include "semmap/error.hpp"

#include <fmt/format.h>

namespace semmap {

Error::Error(std::string module, const std::string& message)
    : std::runtime_error(fmt::format("{}: {}", module, message)), module_(std::move(module))
{
}

void Diagnostics::warn(std::string_view module, std::string_view message)
{
    warnings.push_back(fmt::format("{}: {}", module, message));
}

void Diagnostics::append(const Diagnostics& other)
{
    warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

}  // namespace semmap
