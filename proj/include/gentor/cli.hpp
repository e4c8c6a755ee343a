#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gentor/casolo.hpp"
#include "gentor/extgroup.hpp"
#include "gentor/metab.hpp"

namespace gentor::cli {

enum ExitCode : int { kOk = 0, kInvalidInput = 2, kTheoremViolation = 3 };

using Backend = std::variant<ext::ExtGroup, metab::KGroup, catalog::GammaGroup>;

/// dinf, klein, promislow, Z, K:p,n,m, Kspec:p,n,m, wreath:<file>,
/// freeabext:<file>, spec:<file>, gamma, and direct products A*B*...
/// of the extension-backed names.
Backend resolve_group(const std::string& name);
ext::ExtensionSpec resolve_spec(const std::string& name);

/// Seed from --seed when given, else GENTOR_SEED, else 1.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag);

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gentor::cli
