#include "ctseq/catalog.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>

namespace ctseq {

namespace {

#ifndef CTSEQ_DEFAULT_DATA_DIR
#define CTSEQ_DEFAULT_DATA_DIR "data/fixtures"
#endif

std::mutex g_mutex;
std::string g_data_dir;  // empty: resolve from env / default

struct Entry {
  const char* name;
  const char* oeis;
  Trinomial P;
  std::optional<LaurentPoly> Q;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> e;
    e.push_back({"catalan", "A000108", Trinomial(1, 2, 1),
                 LaurentPoly::parse("0:1,1:-1")});
    e.push_back({"central-binomial", "A000984", Trinomial(1, 2, 1),
                 std::nullopt});
    e.push_back({"central-trinomial", "A002426", Trinomial(1, 1, 1),
                 std::nullopt});
    e.push_back({"motzkin", "A001006", Trinomial(1, 1, 1),
                 LaurentPoly::parse("0:1,2:-1")});
    e.push_back({"riordan", "A005043", Trinomial(1, 1, 1),
                 LaurentPoly::parse("0:1,1:-1")});
    return e;
  }();
  return entries;
}

std::vector<std::string> read_terms(const std::string& path,
                                    const std::string& want_name) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInputError("fixture file not found: " + path);
  }
  std::vector<std::string> terms;
  std::string line;
  bool name_ok = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq != std::string::npos && !std::isdigit(line[0]) && line[0] != '-') {
      std::string key = line.substr(0, eq);
      std::string value = line.substr(eq + 1);
      if (key == "name" && value == want_name) name_ok = true;
      continue;
    }
    terms.push_back(line);
  }
  if (!name_ok) {
    throw InvalidInputError("fixture " + path + " does not declare name=" +
                            want_name);
  }
  if (terms.empty()) {
    throw InvalidInputError("fixture " + path + " has no terms");
  }
  return terms;
}

}  // namespace

std::string data_dir() {
  std::lock_guard<std::mutex> lock(g_mutex);
  if (!g_data_dir.empty()) return g_data_dir;
  if (const char* env = std::getenv("CTSEQ_DATA_DIR"); env && *env) {
    return env;
  }
  return CTSEQ_DEFAULT_DATA_DIR;
}

void set_data_dir(std::string dir) {
  std::lock_guard<std::mutex> lock(g_mutex);
  g_data_dir = std::move(dir);
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const Entry& e : registry()) names.emplace_back(e.name);
  return names;
}

const NamedSequence& lookup(std::string_view name) {
  static std::mutex cache_mutex;
  static std::map<std::string, std::unique_ptr<NamedSequence>> cache;

  std::string key{name};
  std::lock_guard<std::mutex> lock(cache_mutex);
  if (auto it = cache.find(key); it != cache.end()) return *it->second;

  const Entry* found = nullptr;
  for (const Entry& e : registry()) {
    if (key == e.name) {
      found = &e;
      break;
    }
  }
  if (!found) {
    std::string names;
    for (const auto& n : catalog_names()) {
      if (!names.empty()) names += ", ";
      names += n;
    }
    throw InvalidInputError("unknown sequence \"" + key + "\" (have: " +
                            names + ")");
  }

  auto seq = std::make_unique<NamedSequence>();
  seq->name = found->name;
  seq->oeis_id = found->oeis;
  seq->P = found->P;
  seq->Q = found->Q;
  for (const std::string& term :
       read_terms(data_dir() + "/" + key + ".seq", key)) {
    BigInt v;
    if (mpz_set_str(v.get_mpz_t(), term.c_str(), 10) != 0) {
      throw InvalidInputError("fixture term not an integer: " + term);
    }
    seq->reference_prefix.push_back(std::move(v));
  }
  auto [it, _] = cache.emplace(key, std::move(seq));
  return *it->second;
}

std::vector<std::uint32_t> recurrent_prime_fixture() {
  std::vector<std::uint32_t> out;
  for (const std::string& term :
       read_terms(data_dir() + "/a113305.seq", "a113305")) {
    out.push_back(static_cast<std::uint32_t>(std::stoul(term)));
  }
  return out;
}

ComboSpec combo_for(const NamedSequence& seq, std::uint32_t p) {
  if (!seq.Q) {
    return ComboSpec{seq.P, {BigInt(1)}, 1, std::nullopt};
  }
  ReductionResult res = reduce_Q(seq.P, *seq.Q, p);
  if (!res.is_combo()) {
    throw InapplicableError("sequence reduces to the periodic branch mod " +
                            std::to_string(p));
  }
  return res.combo();
}

Classification classify_named(const NamedSequence& seq, std::uint32_t p) {
  if (p == 2 && seq.Q) {
    if (seq.name != "motzkin") {
      throw InapplicableError(
          "mod-2 analysis is available only for bare trinomials and the "
          "motzkin entry");
    }
    // Motzkin verdict equals the trinomial verdict at every prime; mod 2 the
    // word recurrences come from the dedicated power-of-two rule.
    ComboSpec bare{seq.P, {BigInt(1)}, 1, std::nullopt};
    return classify(bare, 2);
  }
  return classify(combo_for(seq, p), p);
}

std::vector<std::uint32_t> recurrent_primes(
    std::string_view name, const std::vector<std::uint32_t>& primes) {
  const NamedSequence& seq = lookup(name);
  std::vector<std::uint32_t> out;
  for (std::uint32_t p : primes) {
    if (classify_named(seq, p).verdict == Verdict::UniformlyRecurrent) {
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace ctseq
