#include "cakecut/bench.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>

#include "cakecut/generator.hpp"
#include "cakecut/verify.hpp"

namespace cakecut {

namespace {

BigInt demand_total(const Instance& inst) {
  BigInt D = 0;
  for (const auto& p : inst.players) D += integer_demand(p.demand);
  return D;
}

}  // namespace

long long batch_bound(std::size_t n, const BigInt& D) {
  if (n == 0) throw std::domain_error("bound needs at least one player");
  return 2 * static_cast<long long>(n - 1) * ceil_log2(D);
}

long long cnh2_bound(const BigInt& D) { return 2 * ceil_log2(D); }

long long cnh_rec_bound(const std::vector<BigInt>& demands) {
  if (demands.empty()) throw std::domain_error("bound needs at least one player");
  long long bound = 0;
  BigInt prefix = demands[0];
  for (std::size_t k = 1; k < demands.size(); ++k) {
    prefix += demands[k];
    bound += 2 * static_cast<long long>(k) * ceil_log2(prefix);
  }
  return bound;
}

RunResult run_named_protocol(const std::string& name, const Instance& inst,
                             KnifeKind kind, bool record_transcript) {
  RunResult r;
  if (name == "clone") {
    CloneRun cr = clone_transform(inst, kind, record_transcript);
    r.division = std::move(cr.division);
    r.totals = cr.totals;
    r.per_player = std::move(cr.counts);
    r.transcript = std::move(cr.transcript);
    r.clone_count = cr.D;
    r.theorem_bound = batch_bound(cr.D.convert_to<std::size_t>(), cr.D);
    return r;
  }

  Oracle oracle(inst, {record_transcript});
  if (name == "batch") {
    r.division = batch_near_half(oracle, kind);
    r.theorem_bound = batch_bound(inst.n(), demand_total(inst));
  } else if (name == "cnh2") {
    r.division = cut_near_halves_2p(oracle, kind);
    r.theorem_bound = cnh2_bound(demand_total(inst));
  } else if (name == "cnh-rec") {
    std::vector<BigInt> demands;
    for (const auto& p : inst.players) demands.push_back(integer_demand(p.demand));
    r.division = recursive_cut_near_halves(oracle, kind);
    r.theorem_bound = cnh_rec_bound(demands);
  } else if (name == "irrational") {
    IrrationalRun run = irrational_divide(oracle, kind);
    r.division = std::move(run.division);
    r.rationalized = run.rationalized.size();
  } else {
    throw std::invalid_argument("unknown protocol \"" + name + "\"");
  }
  r.totals = oracle.totals();
  for (std::size_t i = 0; i < inst.n(); ++i) r.per_player.push_back(oracle.counts(i));
  r.transcript = oracle.transcript();
  return r;
}

std::vector<BenchRow> run_bench(const BenchOptions& opt) {
  if (opt.protocols.empty() || opt.n_list.empty() || opt.d_list.empty())
    throw std::domain_error("bench grid must name protocols, player counts and demand totals");
  if (opt.seeds < 1) throw std::domain_error("bench needs at least one seed");

  std::vector<BenchRow> rows;
  for (const auto& name : opt.protocols) {
    if (name == "irrational")
      throw std::domain_error(
          "the irrational protocol has no closed-form bound to certify; "
          "bench batch, cnh2, cnh-rec or clone");
    for (int n : opt.n_list) {
      if (name == "cnh2" && n != 2)
        throw std::domain_error("cnh2 is a two-player protocol; n-list must be {2}");
      for (const auto& D : opt.d_list) {
        for (int s = 0; s < opt.seeds; ++s) {
          const auto seed = static_cast<std::uint64_t>(s);
          Instance inst = gen_random_instance(seed, n, D, opt.max_cells);

          const auto t0 = std::chrono::steady_clock::now();
          RunResult rr = run_named_protocol(name, inst, KnifeKind::prefix, false);
          const auto t1 = std::chrono::steady_clock::now();

          VerifyReport vr = verify_division(inst, rr.division);
          BenchRow row;
          row.protocol = name;
          row.n = n;
          row.D = D;
          row.seed = seed;
          row.queries_highlevel = rr.totals.highlevel_total();
          row.queries_ws = rr.totals.ws_equivalent();
          row.theorem_bound = rr.theorem_bound;
          row.lower_bound = decimal_log3(Rational(n - 1), Rational(D), 6);
          row.proportional = vr.ok();
          if (opt.timing)
            row.wall_time_ms =
                std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

          if (!vr.ok() || row.queries_highlevel > row.theorem_bound) {
            std::ostringstream cert;
            cert << "bench violation at protocol=" << name << " n=" << n
                 << " D=" << D << " seed=" << seed << ":";
            if (!vr.ok())
              for (const auto& e : vr.errors) cert << " " << e << ";";
            if (row.queries_highlevel > row.theorem_bound)
              cert << " " << row.queries_highlevel << " queries exceed the bound "
                   << row.theorem_bound;
            throw std::logic_error(cert.str());
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "protocol,n,D,seed,queries_highlevel,queries_ws,theorem_bound,"
         "lower_bound,proportional,wall_time_ms\n";
  for (const auto& r : rows) {
    out << r.protocol << ',' << r.n << ',' << r.D << ',' << r.seed << ','
        << r.queries_highlevel << ',' << r.queries_ws << ',' << r.theorem_bound
        << ',' << r.lower_bound << ',' << (r.proportional ? "true" : "false")
        << ',' << r.wall_time_ms << '\n';
  }
  return out.str();
}

}  // namespace cakecut
