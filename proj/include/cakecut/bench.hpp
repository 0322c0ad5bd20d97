#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cakecut/irrational.hpp"
#include "cakecut/protocols.hpp"

namespace cakecut {

/// One protocol run with its ledger and the protocol's own closed-form
/// query bound (-1 when none applies).
struct RunResult {
  Division division;
  QueryCounts totals;
  std::vector<QueryCounts> per_player;
  std::vector<TranscriptEntry> transcript;
  long long theorem_bound = -1;
  BigInt clone_count;             // clone reduction: number of unit clones
  std::size_t rationalized = 0;   // irrational run: batch nodes dispatched
};

/// Runs one protocol by name: batch, cnh2, cnh-rec, clone, or irrational.
RunResult run_named_protocol(const std::string& name, const Instance& inst,
                             KnifeKind kind, bool record_transcript);

long long batch_bound(std::size_t n, const BigInt& D);
long long cnh2_bound(const BigInt& D);
/// Sum over arrivals k of 2k*ceil(log2 of the first k+1 demands).
long long cnh_rec_bound(const std::vector<BigInt>& demands);

struct BenchRow {
  std::string protocol;
  int n = 0;
  BigInt D;
  std::uint64_t seed = 0;
  long long queries_highlevel = 0;
  long long queries_ws = 0;
  long long theorem_bound = 0;
  std::string lower_bound;  // (n-1)*log3(D) in log3 units, decimal
  bool proportional = false;
  long long wall_time_ms = 0;
};

struct BenchOptions {
  std::vector<std::string> protocols;
  std::vector<int> n_list;
  std::vector<BigInt> d_list;
  int seeds = 1;
  int max_cells = 8;
  bool timing = false;  // keep false for byte-identical CSV per seed set
};

/// One self-verified row per (protocol, n, D, seed) in grid order.  A bound
/// or proportionality violation aborts with logic_error naming the cell.
std::vector<BenchRow> run_bench(const BenchOptions& opt);

/// Fixed header + one line per row, in row order.
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace cakecut
