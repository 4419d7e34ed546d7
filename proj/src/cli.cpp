#include "ctseq/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "ctseq/catalog.hpp"
#include "ctseq/recurrence.hpp"

namespace ctseq {

namespace {

using Json = nlohmann::ordered_json;

struct CommonOpts {
  std::string seq;
  std::string p_text;
  std::string q_text;
  std::string combo_text;
  std::string family_text;
  std::uint32_t p = 0;
  std::string format = "json";
  bool verify = true;
};

struct ResolvedSeq {
  std::string selector;  // echo of what was chosen
  std::string name;      // catalog name, if any
  Trinomial P{1, 1, 1};
  std::optional<LaurentPoly> Q;
  std::optional<ComboSpec> combo;  // explicit combo selector
};

ResolvedSeq resolve_selector(const CommonOpts& o) {
  int given = 0;
  given += !o.seq.empty();
  given += !o.p_text.empty();
  given += !o.combo_text.empty();
  given += !o.family_text.empty();
  if (given != 1) {
    throw InvalidInputError(
        "exactly one sequence selector is required: --seq, --P [--Q], "
        "--combo, or --family");
  }
  ResolvedSeq rs;
  if (!o.seq.empty()) {
    const NamedSequence& seq = lookup(o.seq);
    rs.selector = "seq=" + o.seq;
    rs.name = seq.name;
    rs.P = seq.P;
    rs.Q = seq.Q;
  } else if (!o.p_text.empty()) {
    rs.P = Trinomial::parse(o.p_text);
    rs.selector = "P=" + rs.P.str();
    if (!o.q_text.empty()) {
      rs.Q = LaurentPoly::parse(o.q_text);
      rs.selector += " Q=" + rs.Q->str();
    }
  } else if (!o.combo_text.empty()) {
    rs.combo = ComboSpec::parse(o.combo_text);
    rs.P = rs.combo->P;
    rs.selector = "combo{" + rs.combo->str() + "}";
  } else {
    std::uint64_t d = 0, m1 = 0, m2 = 0;
    if (std::sscanf(o.family_text.c_str(), "%lu,%lu,%lu", &d, &m1, &m2) != 3) {
      throw InvalidInputError("family selector wants d,m1,m2");
    }
    auto [P, Q] = family_spec(d, m1, m2);
    rs.P = P;
    rs.Q = Q;
    rs.selector = "family=" + o.family_text;
  }
  if (!o.q_text.empty() && o.p_text.empty()) {
    throw InvalidInputError("--Q requires --P");
  }
  return rs;
}

std::uint32_t require_prime_opt(const CommonOpts& o) {
  if (o.p == 0) throw InvalidInputError("this command requires --p");
  if (!is_prime(o.p)) {
    throw InvalidInputError("invalid modulus: " + std::to_string(o.p) +
                            " is not prime");
  }
  return o.p;
}

// Analysis combo for the selector at prime p; the periodic branch and the
// Motzkin mod-2 rule are handled by the individual commands before calling
// this.
ComboSpec combo_at(const ResolvedSeq& rs, std::uint32_t p) {
  if (rs.combo) return *rs.combo;
  if (!rs.Q) return ComboSpec{rs.P, {BigInt(1)}, 1, std::nullopt};
  ReductionResult res = reduce_Q(rs.P, *rs.Q, p);
  if (!res.is_combo()) {
    throw InapplicableError(
        "sequence reduces to the periodic branch mod " + std::to_string(p));
  }
  return res.combo();
}

bool is_motzkin(const ResolvedSeq& rs) {
  return rs.name == "motzkin" ||
         (rs.Q && rs.P == Trinomial(1, 1, 1) &&
          *rs.Q == LaurentPoly::parse("0:1,2:-1"));
}

std::string rat_str(const BigRat& r) { return r.get_str(); }

double rat_approx(const BigRat& r) { return r.get_d(); }

std::string hash_hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

// ---- output rendering ------------------------------------------------

void emit_scalar_block(std::ostream& out, const Json& record,
                       const std::string& format) {
  if (format == "json") {
    out << record.dump(2) << "\n";
    return;
  }
  // csv / plain flatten the result object to key/value rows
  const Json& result = record.at("result");
  if (format == "csv") {
    out << "key,value\n";
    for (auto it = result.begin(); it != result.end(); ++it) {
      out << it.key() << ","
          << (it.value().is_string() ? it.value().get<std::string>()
                                     : it.value().dump())
          << "\n";
    }
  } else {
    for (auto it = result.begin(); it != result.end(); ++it) {
      out << it.key() << ": "
          << (it.value().is_string() ? it.value().get<std::string>()
                                     : it.value().dump())
          << "\n";
    }
  }
}

void emit_table(std::ostream& out, const Json& record,
                const std::string& format) {
  if (format == "json") {
    out << record.dump(2) << "\n";
    return;
  }
  const Json& rows = record.at("result").at("rows");
  if (format == "csv") {
    out << "n,value\n";
    for (const auto& row : rows) {
      out << row.at("n") << "," << row.at("value").get<std::string>() << "\n";
    }
  } else {
    for (const auto& row : rows) {
      out << row.at("n") << " " << row.at("value").get<std::string>() << "\n";
    }
  }
}

Json envelope(const std::string& command, const Json& input) {
  Json j;
  j["version"] = kVersion;
  j["command"] = command;
  j["input"] = input;
  return j;
}

Json input_echo(const CommonOpts& o, const ResolvedSeq& rs) {
  Json in;
  in["selector"] = rs.selector;
  if (o.p) in["p"] = o.p;
  in["format"] = o.format;
  in["verify"] = o.verify;
  return in;
}

Json table_json(const DigitTable& t) {
  Json j = Json::array();
  for (std::uint32_t v : t.values) j.push_back(v);
  return j;
}

// ---- commands --------------------------------------------------------

struct TermsOpts {
  std::uint64_t from = 0;
  std::uint64_t count = 0;
  std::string engine = "oracle";
};

int run_parsed(const std::string& command, const CommonOpts& o,
               const TermsOpts& t, std::uint32_t k_param,
               const std::string& start_text, std::uint64_t len_param,
               std::uint64_t horizon, std::ostream& out) {
  if (command == "terms") {
    ResolvedSeq rs = resolve_selector(o);
    Json in = input_echo(o, rs);
    in["from"] = t.from;
    in["count"] = t.count;
    in["engine"] = t.engine;
    Json record = envelope("terms", in);

    Json rows = Json::array();
    if (t.engine == "oracle") {
      if (t.from + t.count > 10000) {
        throw BudgetError("oracle engine capped at from+count <= 10^4");
      }
      std::size_t need = static_cast<std::size_t>(t.from + t.count);
      std::vector<BigInt> values;
      if (rs.combo) {
        values = combo_prefix_exact(*rs.combo, need);
      } else if (rs.Q) {
        values = b_prefix(rs.P, *rs.Q, need);
      } else {
        values = a_prefix(rs.P, need);
      }
      for (std::uint64_t n = t.from; n < t.from + t.count; ++n) {
        BigInt v = values[static_cast<std::size_t>(n)];
        if (o.p) {
          if (!is_prime(o.p)) {
            throw InvalidInputError("invalid modulus: " +
                                    std::to_string(o.p));
          }
          v = mod_u32(v, o.p);
        }
        Json row;
        row["n"] = n;
        row["value"] = v.get_str();
        rows.push_back(row);
      }
    } else if (t.engine == "fast") {
      std::uint32_t p = require_prime_opt(o);
      if (p == 2 && rs.Q) {
        if (!is_motzkin(rs)) {
          throw InapplicableError(
              "fast mod-2 evaluation is available only for bare trinomials "
              "and the motzkin sequence");
        }
        for (std::uint64_t n = t.from; n < t.from + t.count; ++n) {
          Json row;
          row["n"] = n;
          row["value"] = std::to_string(motzkin_parity(n));
          rows.push_back(row);
        }
      } else if (rs.Q) {
        ReductionResult res = reduce_Q(rs.P, *rs.Q, p);
        if (res.is_combo()) {
          const ComboSpec& spec = res.combo();
          for (std::uint64_t n = t.from; n < t.from + t.count; ++n) {
            Json row;
            row["n"] = n;
            row["value"] =
                std::to_string(combo_eval_mod(spec, p, to_digits(n, p)));
            rows.push_back(row);
          }
        } else {
          const PeriodicForm& form = res.periodic();
          std::uint64_t v = 1 % p;
          for (std::uint64_t n = 0; n < t.from + t.count; ++n) {
            if (n >= t.from) {
              Json row;
              row["n"] = n;
              row["value"] = std::to_string(v * form.ct_q % p);
              rows.push_back(row);
            }
            v = v * form.alpha0 % p;
          }
        }
      } else {
        ComboSpec spec = combo_at(rs, p);
        for (std::uint64_t n = t.from; n < t.from + t.count; ++n) {
          Json row;
          row["n"] = n;
          row["value"] =
              std::to_string(combo_eval_mod(spec, p, to_digits(n, p)));
          rows.push_back(row);
        }
      }
    } else {
      throw InvalidInputError("engine must be oracle or fast");
    }
    record["result"]["rows"] = std::move(rows);
    emit_table(out, record, o.format);
    return kExitOk;
  }

  if (command == "classify") {
    ResolvedSeq rs = resolve_selector(o);
    std::uint32_t p = require_prime_opt(o);
    Json record = envelope("classify", input_echo(o, rs));
    Json& result = record["result"];
    result["p"] = p;

    if (p == 2 && rs.Q && !rs.combo) {
      if (!is_motzkin(rs)) {
        throw InapplicableError(
            "mod-2 classification is available only for bare trinomials "
            "and the motzkin sequence");
      }
      ComboSpec bare{rs.P, {BigInt(1)}, 1, std::nullopt};
      Classification cls = classify(bare, 2);
      result["verdict"] = to_string(cls.verdict);
      result["strategy"] = to_string(WitnessStrategy::Mod2Rule);
      result["digit_table"] = table_json(cls.table);
      emit_scalar_block(out, record, o.format);
      return kExitOk;
    }

    if (rs.Q && !rs.combo) {
      ReductionResult res = reduce_Q(rs.P, *rs.Q, p);
      if (!res.is_combo()) {
        const PeriodicForm& form = res.periodic();
        result["verdict"] = to_string(Verdict::UniformlyRecurrent);
        result["periodic"] = true;
        result["alpha0"] = form.alpha0;
        result["ct_q"] = form.ct_q;
        emit_scalar_block(out, record, o.format);
        return kExitOk;
      }
      Classification cls = classify(res.combo(), p);
      result["verdict"] = to_string(cls.verdict);
      if (cls.zero_digit) result["zero_digit"] = *cls.zero_digit;
      result["digit_table"] = table_json(cls.table);
      emit_scalar_block(out, record, o.format);
      return kExitOk;
    }

    Classification cls = classify(combo_at(rs, p), p);
    result["verdict"] = to_string(cls.verdict);
    if (cls.zero_digit) result["zero_digit"] = *cls.zero_digit;
    result["digit_table"] = table_json(cls.table);
    emit_scalar_block(out, record, o.format);
    return kExitOk;
  }

  if (command == "reduce") {
    ResolvedSeq rs = resolve_selector(o);
    std::uint32_t p = require_prime_opt(o);
    if (!rs.Q && !rs.combo) {
      throw InvalidInputError(
          "reduce needs a Q-based selector (catalog name, --P with --Q, or "
          "--family)");
    }
    Json record = envelope("reduce", input_echo(o, rs));
    Json& result = record["result"];
    result["p"] = p;
    if (rs.combo) {
      ComboSpec norm = rs.combo->normalized();
      result["branch"] = "combo";
      result["combo"] = norm.str();
      emit_scalar_block(out, record, o.format);
      return kExitOk;
    }
    ReductionResult res = reduce_Q(rs.P, *rs.Q, p);
    if (!res.is_combo()) {
      const PeriodicForm& form = res.periodic();
      result["branch"] = "periodic";
      result["alpha0"] = form.alpha0;
      result["ct_q"] = form.ct_q;
      emit_scalar_block(out, record, o.format);
      return kExitOk;
    }
    ComboSpec raw = res.combo();
    ComboSpec norm = raw.normalized();
    result["branch"] = "combo";
    result["P"] = norm.P.str();
    Json cj = Json::array();
    for (const BigInt& c : norm.coeffs) cj.push_back(c.get_str());
    result["coefficients"] = cj;
    result["divisor"] = norm.divisor.get_str();
    if (norm.valid_mod) result["valid_mod"] = *norm.valid_mod;
    result["combo"] = norm.str();
    result["combo_raw"] = raw.str();
    if (o.verify) {
      // soundness spot-check against the residue row oracle
      std::size_t n_check = 200;
      std::vector<std::uint32_t> direct =
          b_prefix_mod(rs.P, *rs.Q, p, n_check);
      bool ok = true;
      for (std::size_t n = 0; n < n_check && ok; ++n) {
        ok = combo_eval_mod(raw, p, to_digits(std::uint64_t(n), p)) ==
             direct[n];
      }
      if (!ok) throw InternalError("reduction failed the oracle spot-check");
      result["verified_prefix"] = n_check;
    }
    emit_scalar_block(out, record, o.format);
    return kExitOk;
  }

  if (command == "witness") {
    ResolvedSeq rs = resolve_selector(o);
    std::uint32_t p = require_prime_opt(o);
    Json record = envelope("witness", input_echo(o, rs));
    Json& result = record["result"];
    record["input"]["start"] = start_text;
    record["input"]["len"] = len_param;

    if (p == 2 && rs.Q && !rs.combo) {
      if (!is_motzkin(rs)) {
        throw InapplicableError(
            "mod-2 witnesses are available only for the motzkin sequence "
            "and bare trinomials");
      }
      BigInt start_value = from_digits(BasePDigits::parse(2, start_text));
      if (!start_value.fits_ulong_p()) {
        throw BudgetError("mod-2 witness start must fit a machine word");
      }
      WordWitness w =
          motzkin_mod2_witness(start_value.get_ui(), len_param);
      result["strategy"] = to_string(w.strategy);
      result["start"] = w.start.str();
      result["len"] = w.length;
      result["shift"] = w.shift.str();
      result["shift_value"] = from_digits(w.shift).get_str();
      result["shifted_start"] = w.shifted_start.str();
      result["transcript_hash"] = hash_hex(w.transcript_hash);
      emit_scalar_block(out, record, o.format);
      return kExitOk;
    }

    // bare trinomial with a length-1 request routes to the single-term
    // construction
    if (!rs.Q && !rs.combo && len_param == 1) {
      BasePDigits start = BasePDigits::parse(p, start_text);
      SingleWitness sw = witness_single(rs.P, p, start);
      result["kind"] = "single-term";
      result["case"] = to_string(sw.case_used);
      result["n"] = start.str();
      result["n_prime"] = sw.n_prime.str();
      result["residue"] = a_mod(rs.P, start);
      if (o.verify) {
        if (a_mod(rs.P, sw.n_prime) != a_mod(rs.P, start) ||
            compare_value(sw.n_prime, start) <= 0) {
          throw InternalError("single witness re-verification failed");
        }
        result["verified"] = true;
      }
      emit_scalar_block(out, record, o.format);
      return kExitOk;
    }

    ComboSpec spec = combo_at(rs, p);
    BasePDigits start = BasePDigits::parse(p, start_text);
    WordWitness w = witness_word(spec, p, start, len_param);
    result["kind"] = "word";
    result["strategy"] = to_string(w.strategy);
    result["start"] = w.start.str();
    result["len"] = w.length;
    result["shift"] = w.shift.str();
    result["shifted_start"] = w.shifted_start.str();
    Json internals;
    internals["beta"] = w.beta;
    internals["s"] = w.s;
    internals["alpha"] = w.alpha;
    internals["k"] = w.k;
    internals["q"] = w.q;
    internals["r"] = w.r;
    result["internals"] = internals;
    result["transcript_hash"] = hash_hex(w.transcript_hash);
    if (o.verify) {
      // independent re-check through the brute-force scan when in range
      BigInt start_value = from_digits(start);
      BigInt shift_value = from_digits(w.shift);
      if (start_value <= 1000000 && shift_value <= 20000) {
        auto min_delta = min_recurrence_oracle(
            spec, p, start_value.get_ui(), len_param,
            shift_value.get_ui());
        if (!min_delta || BigInt(*min_delta) > shift_value) {
          throw InternalError("oracle re-check failed for word witness");
        }
        result["min_shift"] = *min_delta;
        result["verified"] = "oracle";
      } else {
        result["verified"] = "fast-path";
      }
    }
    emit_scalar_block(out, record, o.format);
    return kExitOk;
  }

  if (command == "zero-run") {
    ResolvedSeq rs = resolve_selector(o);
    std::uint32_t p = require_prime_opt(o);
    ComboSpec spec = combo_at(rs, p);
    Json record = envelope("zero-run", input_echo(o, rs));
    record["input"]["k"] = k_param;
    ZeroRun run = zero_run(spec, p, k_param);
    Json& result = record["result"];
    result["p"] = p;
    result["zero_digit"] = run.zero_digit;
    result["k"] = run.k;
    result["start"] = run.start.str();
    result["start_value"] = from_digits(run.start).get_str();
    result["length"] = run.length.get_str();
    if (o.verify) {
      BigInt limit = std::min(run.length, BigInt(2000));
      BasePDigits n = run.start;
      for (BigInt i = 0; i < limit; ++i) {
        if (combo_eval_mod(spec, p, n) != 0) {
          throw InternalError("zero run re-verification failed");
        }
        n = add(n, to_digits(std::uint64_t{1}, p));
      }
      result["verified_prefix"] = limit.get_str();
    }
    emit_scalar_block(out, record, o.format);
    return kExitOk;
  }

  if (command == "density") {
    ResolvedSeq rs = resolve_selector(o);
    std::uint32_t p = require_prime_opt(o);
    ComboSpec spec = combo_at(rs, p);
    Json record = envelope("density", input_echo(o, rs));
    record["input"]["k"] = k_param;
    Json& result = record["result"];
    result["p"] = p;
    result["k"] = k_param;
    BigRat measured = density_measure(spec, p, k_param);
    result["measured"] = rat_str(measured);
    result["measured_approx"] = rat_approx(measured);
    std::uint64_t h = spec.span();
    std::uint64_t beta = h == 0 ? 0 : to_digits(h, p).size();
    if (k_param > beta) {
      BigRat bound = density_lower_bound(p, h, k_param);
      result["lower_bound"] = rat_str(bound);
      result["lower_bound_approx"] = rat_approx(bound);
      result["bound_holds"] = measured >= bound;
    }
    emit_scalar_block(out, record, o.format);
    return kExitOk;
  }

  if (command == "min-recurrence") {
    ResolvedSeq rs = resolve_selector(o);
    std::uint32_t p = require_prime_opt(o);
    ComboSpec spec = combo_at(rs, p);
    Json record = envelope("min-recurrence", input_echo(o, rs));
    record["input"]["start"] = start_text;
    record["input"]["len"] = len_param;
    record["input"]["horizon"] = horizon;
    BigInt start_value = from_digits(BasePDigits::parse(p, start_text));
    if (!start_value.fits_ulong_p()) {
      throw BudgetError("min-recurrence start must fit a machine word");
    }
    auto delta =
        min_recurrence_oracle(spec, p, start_value.get_ui(), len_param,
                              horizon);
    Json& result = record["result"];
    result["p"] = p;
    result["found"] = delta.has_value();
    if (delta) result["shift"] = *delta;
    emit_scalar_block(out, record, o.format);
    return kExitOk;
  }

  throw InvalidInputError("unknown command " + command);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"constant-term sequence toolkit"};
  app.require_subcommand(1);

  CommonOpts o;
  TermsOpts t;
  std::uint32_t k_param = 1;
  std::string start_text = "0";
  std::uint64_t len_param = 1;
  std::uint64_t horizon = 10000;

  auto add_common = [&o](CLI::App* cmd) {
    cmd->add_option("--seq", o.seq, "catalog sequence name");
    cmd->add_option("--P", o.p_text, "trinomial a-1,a0,a1");
    cmd->add_option("--Q", o.q_text, "Laurent polynomial exp:coeff,...");
    cmd->add_option("--combo", o.combo_text,
                    "explicit combo 'P=..; c=..; d=..'");
    cmd->add_option("--family", o.family_text, "family triple d,m1,m2");
    cmd->add_option("--p", o.p, "prime modulus");
    cmd->add_option("--format", o.format, "json|csv|plain")
        ->check(CLI::IsMember({"json", "csv", "plain"}));
    cmd->add_flag("--verify,!--no-verify", o.verify,
                  "re-check emitted certificates (default on)");
  };

  CLI::App* terms = app.add_subcommand("terms", "list sequence terms");
  add_common(terms);
  terms->add_option("--from", t.from, "first index");
  terms->add_option("--count", t.count, "number of terms")->required();
  terms->add_option("--engine", t.engine, "oracle|fast")
      ->check(CLI::IsMember({"oracle", "fast"}));

  CLI::App* classify_cmd =
      app.add_subcommand("classify", "uniformly recurrent or density-one");
  add_common(classify_cmd);

  CLI::App* reduce_cmd =
      app.add_subcommand("reduce", "rewrite ct[P^n Q] as a combo");
  add_common(reduce_cmd);

  CLI::App* witness_cmd =
      app.add_subcommand("witness", "word-recurrence certificate");
  add_common(witness_cmd);
  witness_cmd->add_option("--start", start_text, "start index as a numeral");
  witness_cmd->add_option("--len", len_param, "word length");

  CLI::App* zero_cmd = app.add_subcommand("zero-run", "certified zero run");
  add_common(zero_cmd);
  zero_cmd->add_option("--k", k_param, "power-of-p scale")->required();

  CLI::App* density_cmd =
      app.add_subcommand("density", "measured zero fraction and bound");
  add_common(density_cmd);
  density_cmd->add_option("--k", k_param, "scan the first p^k indices")
      ->required();

  CLI::App* min_cmd =
      app.add_subcommand("min-recurrence", "least shift by brute force");
  add_common(min_cmd);
  min_cmd->add_option("--start", start_text, "start index as a numeral");
  min_cmd->add_option("--len", len_param, "word length");
  min_cmd->add_option("--horizon", horizon, "search horizon");

  try {
    std::vector<const char*> argv;
    argv.push_back("ctseq");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  }

  std::string command;
  for (const auto* sub :
       {terms, classify_cmd, reduce_cmd, witness_cmd, zero_cmd, density_cmd,
        min_cmd}) {
    if (sub->parsed()) command = sub->get_name();
  }

  try {
    return run_parsed(command, o, t, k_param, start_text, len_param, horizon,
                      out);
  } catch (const InvalidInputError& e) {
    err << "error (malformed input): " << e.what() << "\n";
    return kExitMalformed;
  } catch (const InapplicableError& e) {
    err << "error (inapplicable): " << e.what() << "\n";
    return kExitInapplicable;
  } catch (const BudgetError& e) {
    err << "error (budget): " << e.what() << "\n";
    return kExitBudget;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace ctseq
