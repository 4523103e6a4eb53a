#include <doctest.h>

#include <jck/error.hpp>
#include <jck/modal.hpp>

#include "helpers.hpp"
#include "jck_test/testkit.hpp"

using namespace jck;

TEST_SUITE("oracles") {

TEST_CASE("indexed saturation equals the naive fixpoint") {
  std::size_t compared = 0;
  for (std::uint64_t seed = 500; compared < 150 && seed < 3000; ++seed) {
    auto inst = testkit::random_saturation_instance(seed, 4, 40);
    if (!inst) continue;
    ++compared;
    CAPTURE(seed);
    CHECK(saturate(inst->model, inst->universe) ==
          testkit::naive_saturate(inst->model, inst->universe));
  }
  CHECK(compared == 150);
}

TEST_CASE("Kripke evaluation equals breadth-first common knowledge") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int h = 1 + static_cast<int>(seed % 3);
    const KripkeModel k = random_kripke_model(h, 1 + seed % 5, 0.1 * static_cast<double>(seed % 8), 3, seed);
    SyntaxSampler rng(h, seed);
    const ModalFormula a = forgetful(rng.formula(3));
    CAPTURE(print_modal(a));
    for (World w = 0; w < k.world_count(); ++w)
      CHECK(kripke_satisfies(k, w, a) == testkit::bfs_satisfies(k, w, a));
  }
}

TEST_CASE("tautology check equals truth-table enumeration") {
  std::size_t positives = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    SyntaxSampler rng(2, seed, {.max_index = 1, .max_props = 3});
    Formula a = rng.formula(3);
    // bias towards valid shapes so both answers occur often
    switch (seed % 4) {
      case 0: a = imp(a, a); break;
      case 1: a = disj(a, neg(a)); break;
      case 2: a = imp(a, imp(rng.formula(2), a)); break;
      default: break;
    }
    bool expected = false;
    try {
      expected = testkit::brute_force_tautology(a);
    } catch (const ResourceError&) {
      continue;
    }
    positives += expected ? 1 : 0;
    CAPTURE(print_formula(a));
    CHECK(is_tautology(a) == expected);
  }
  CHECK(positives > 100);
}

TEST_CASE("synthesized theorems are accepted and valid") {
  for (int h = 1; h <= 3; ++h) {
    const auto ds = testkit::synthesized_theorems(h, 20, 42 + static_cast<std::uint64_t>(h));
    CHECK(ds.size() == 20);
    RandomModelParams p;
    p.agents = h;
    p.worlds = 3;
    p.density = 0.5;
    p.seed = static_cast<std::uint64_t>(h);
    const AFModel m = random_model(p);
    for (const auto& d : ds) {
      CHECK(check_derivation(d, ConstantSpecification::total_c()).accepted());
      CHECK(valid_in_model(m, d.conclusion(), 0));
    }
  }
}

}
