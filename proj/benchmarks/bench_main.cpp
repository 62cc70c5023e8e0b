#include <benchmark/benchmark.h>

#include <map>

#include "qke/dlog.hpp"
#include "qke/protocol.hpp"

namespace {

using namespace qke;

const DomainParams& group(std::size_t bits) {
  static std::map<std::size_t, DomainParams> cache;
  auto it = cache.find(bits);
  if (it == cache.end()) {
    SeededRandom rng(bits);
    it = cache.emplace(bits, generate_domain_params(bits, rng)).first;
  }
  return it->second;
}

void BM_ModExp(benchmark::State& state) {
  const DomainParams& params = group(static_cast<std::size_t>(state.range(0)));
  SeededRandom rng(1);
  const BigUint e = rng.uniform_below(params.order());
  for (auto _ : state) benchmark::DoNotOptimize(mod_exp(params.g(), e, params.p()));
}
BENCHMARK(BM_ModExp)->Arg(128)->Arg(256)->Arg(512)->Arg(2048);

void BM_SafePrime(benchmark::State& state) {
  SeededRandom rng(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_safe_prime(static_cast<std::size_t>(state.range(0)), rng));
  }
}
BENCHMARK(BM_SafePrime)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Keygen(benchmark::State& state) {
  const DomainParams& params = group(static_cast<std::size_t>(state.range(0)));
  SeededRandom rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(generate_keypair(params, rng));
}
BENCHMARK(BM_Keygen)->Arg(128)->Arg(256)->Arg(512);

void BM_Session(benchmark::State& state) {
  const DomainParams& params = group(static_cast<std::size_t>(state.range(0)));
  SeededRandom rng(4);
  const KeyPair alice = generate_keypair(params, rng);
  const KeyPair bob = generate_keypair(params, rng);
  for (auto _ : state) {
    Session a = Session::start(Role::kInitiator, alice);
    Session b = Session::start(Role::kResponder, bob);
    a.receive_peer_public(bob.public_key);
    b.receive_peer_public(alice.public_key);
    const auto ab = a.compute_intermediate();
    const auto ba = b.compute_intermediate();
    a.finalize(ba);
    b.finalize(ab);
    benchmark::DoNotOptimize(a.shared_key());
  }
}
BENCHMARK(BM_Session)->Arg(128)->Arg(256)->Arg(512);

void BM_Dlog(benchmark::State& state) {
  const DomainParams& params = group(static_cast<std::size_t>(state.range(0)));
  const DlogSolver solver(params);
  SeededRandom rng(5);
  for (auto _ : state) {
    state.PauseTiming();
    const BigUint target = mod_exp(params.g(), rng.uniform_below(params.order()), params.p());
    state.ResumeTiming();
    benchmark::DoNotOptimize(solver.solve(target));
  }
}
BENCHMARK(BM_Dlog)->Arg(16)->Arg(24)->Arg(32);

}  // namespace
BENCHMARK_MAIN();
