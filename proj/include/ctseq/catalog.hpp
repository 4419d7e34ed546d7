#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctseq/laurent.hpp"
#include "ctseq/recurrence.hpp"
#include "ctseq/reduce.hpp"

namespace ctseq {

/// A named sequence: its construction plus a vendored reference prefix.
/// The prefix is read from the fixture directory; a test regenerates every
/// prefix from the construction through the exact oracle.
struct NamedSequence {
  std::string name;
  std::string oeis_id;
  Trinomial P{1, 1, 1};
  std::optional<LaurentPoly> Q;  // absent for bare trinomial sequences
  std::vector<BigInt> reference_prefix;
};

/// Directory holding the .seq fixture files. Defaults to the vendored data
/// directory; the CTSEQ_DATA_DIR environment variable overrides it.
std::string data_dir();
void set_data_dir(std::string dir);

/// Registered names, sorted.
std::vector<std::string> catalog_names();

/// Catalog lookup; loads and caches the fixture prefix. Unknown names are
/// invalid input.
const NamedSequence& lookup(std::string_view name);

/// The vendored prime-list fixture: primes whose trinomial digit table is
/// zero-free, i.e. the uniformly recurrent moduli for this catalog's
/// central-trinomial family.
std::vector<std::uint32_t> recurrent_prime_fixture();

/// The analysis combo for a named sequence mod p. Bare trinomials pass
/// through; Q-based entries reduce. For the Motzkin entry mod 2 there is no
/// combo; callers must use the dedicated mod-2 path.
ComboSpec combo_for(const NamedSequence& seq, std::uint32_t p);

/// Classification of a named sequence mod p, including the Motzkin mod-2
/// special path (reported with the Mod2Rule strategy by the CLI).
Classification classify_named(const NamedSequence& seq, std::uint32_t p);

/// The subset of `primes` for which the named sequence is uniformly
/// recurrent.
std::vector<std::uint32_t> recurrent_primes(
    std::string_view name, const std::vector<std::uint32_t>& primes);

}  // namespace ctseq
