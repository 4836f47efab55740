/* Copyright (C) 2026 The cyclored authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License. See accompanying LICENSE file.
 */
#include <doctest.h>

#include "cyclored/density.hpp"
#include "cyclored/errors.hpp"
#include "cyclored/ffpoly.hpp"

#include <cmath>
#include <cstdlib>

using namespace cyclored;

namespace {

void check_same_report(const DensityReport& a, const DensityReport& b)
{
  CHECK(a.total_ideals == b.total_ideals);
  CHECK(a.split_ideals == b.split_ideals);
  CHECK(a.easy_ideals == b.easy_ideals);
  CHECK(a.special_ideals == b.special_ideals);
  CHECK(a.ramified_primes == b.ramified_primes);
  CHECK(a.easy_density == b.easy_density);
  CHECK(a.alpha == b.alpha);
  REQUIRE(a.rows.size() == b.rows.size());
  for (size_t i = 0; i < a.rows.size(); i++) {
    CHECK(a.rows[i].rho == b.rows[i].rho);
    CHECK(a.rows[i].f == b.rows[i].f);
    CHECK(a.rows[i].g == b.rows[i].g);
    CHECK(a.rows[i].r == b.rows[i].r);
    CHECK(a.rows[i].easy == b.rows[i].easy);
    CHECK(a.rows[i].cls == b.rows[i].cls);
  }
}

} // namespace

TEST_SUITE_BEGIN("density");

TEST_CASE("census for conductor 16 below 100")
{
  // Hand census: norms below 100 come from rho = 17, 97 (split, 8 ideals
  // each), rho = 7 (f = 2, 4 ideals) and rho = 3 (f = 4, 2 ideals); only
  // rho = 3 reduces below the top level, and 2 is the one ramified prime.
  auto F = CycloField::make(16);
  DensityReport rep = scan_primes(F, 100, 1);

  CHECK(rep.N == 16);
  CHECK(rep.q_base == 2);
  CHECK(rep.bound == 100);
  CHECK(rep.total_ideals == 22);
  CHECK(rep.split_ideals == 16);
  CHECK(rep.easy_ideals == 2);
  CHECK(rep.special_ideals == 6);      // rho = 3 and rho = 7 are 3 mod 4
  CHECK(rep.ramified_primes == 1);
  CHECK(rep.easy_density == Rat(1, 11));
  CHECK(rep.split_density == Rat(8, 11));
  CHECK(rep.alpha == Rat(4));          // phi(s) * q^(n-1) with s = 1, n = 3
  CHECK(rep.bound_value > 0.0);

  REQUIRE(rep.rows.size() == 4);
  CHECK(rep.rows[0].rho == 3);
  CHECK(rep.rows[0].f == 4);
  CHECK(rep.rows[0].g == 2);
  CHECK(rep.rows[0].r == 2);
  CHECK(rep.rows[0].easy);
  CHECK(rep.rows[0].cls == SpecialClass::EASY_S2);
  CHECK(rep.rows[1].rho == 7);
  CHECK(rep.rows[1].f == 2);
  CHECK_FALSE(rep.rows[1].easy);
  CHECK(rep.rows[2].rho == 17);
  CHECK(rep.rows[2].f == 1);
  CHECK(rep.rows[2].g == 8);
  CHECK(rep.rows[3].rho == 97);
}

TEST_CASE("census for conductor 4 below 30")
{
  auto F = CycloField::make(4);
  DensityReport rep = scan_primes(F, 30, 1);

  CHECK(rep.total_ideals == 9);        // 5, 13, 17, 29 split; 3 is inert
  CHECK(rep.split_ideals == 8);
  CHECK(rep.easy_ideals == 1);         // rho = 3 drops to the rationals
  CHECK(rep.special_ideals == 1);
  CHECK(rep.ramified_primes == 1);
  CHECK(rep.alpha == Rat(1));
}

TEST_CASE("census for an odd base prime")
{
  // Conductor 5 exercises the q odd branch of the counting constant and
  // of the special-prime classes: every split prime (11, 31, 41) has
  // first q-adic valuation one, and 2 is inert but unramified.
  auto F = CycloField::make(5);
  DensityReport rep = scan_primes(F, 50, 1);

  CHECK(rep.total_ideals == 13);
  CHECK(rep.split_ideals == 12);
  CHECK(rep.easy_ideals == 0);         // no proper sublevel at n = 0
  CHECK(rep.special_ideals == 12);
  CHECK(rep.ramified_primes == 1);
  CHECK(rep.alpha == Rat(4, 5));

  REQUIRE(rep.rows.size() == 4);
  CHECK(rep.rows[0].rho == 2);
  CHECK(rep.rows[0].f == 4);
  CHECK(rep.rows[0].cls == SpecialClass::NOT_SPECIAL);
  CHECK(rep.rows[1].cls == SpecialClass::EASY_SP);
}

TEST_CASE("empty census")
{
  auto F = CycloField::make(16);
  DensityReport rep = scan_primes(F, 2, 1);
  CHECK(rep.total_ideals == 0);
  CHECK(rep.ramified_primes == 0);
  CHECK(rep.rows.empty());
  CHECK(rep.easy_density == Rat(0));
  CHECK(rep.split_density == Rat(0));
}

TEST_CASE("census bounds are validated")
{
  auto F = CycloField::make(16);
  CHECK_THROWS_AS(scan_primes(F, 1, 1), input_error);
  CHECK_THROWS_AS(scan_primes(F, 100000001, 1), resource_error);
  CHECK_THROWS_AS(scan_primes(nullptr, 100, 1), input_error);
}

TEST_CASE("census rows agree with direct factorization")
{
  // Recount a larger sweep against the factoring oracle: the number of
  // prime ideals above rho equals the number of irreducible factors of
  // the cyclotomic polynomial mod rho, each of degree f.
  auto F = CycloField::make(16);
  DensityReport rep = scan_primes(F, 2000, 1);

  u64 recount = 0, easy_recount = 0;
  u64 last_rho = 0;
  for (const PrimeRow& row : rep.rows) {
    CHECK(row.rho > last_rho);         // merged in prime order
    last_rho = row.rho;
    CHECK(int_pow(Int(row.rho), row.f) < 2000);
    FactorSet fs = factor_cyclotomic_mod_p(16, row.rho);
    CHECK(fs.factors.size() == row.g);
    CHECK(fs.common_degree == row.f);
    for (const FpPoly& h : fs.factors)
      CHECK(h.degree() == (int)row.f);
    recount += row.g;
    if (row.easy) easy_recount += row.g;
  }
  CHECK(recount == rep.total_ideals);
  CHECK(easy_recount == rep.easy_ideals);
  CHECK(rep.easy_ideals <= rep.total_ideals);
  CHECK(rep.special_ideals <= rep.total_ideals);

  // exact counting bound, rechecked here on top of the internal assert
  CHECK(Rat(rep.easy_ideals) * Rat(rep.easy_ideals) <=
        rep.alpha * rep.alpha * Rat(2000));
}

TEST_CASE("worker count does not change the census")
{
  auto F = CycloField::make(16);
  DensityReport one = scan_primes(F, 2000, 1);
  DensityReport four = scan_primes(F, 2000, 4);
  check_same_report(one, four);
}

TEST_CASE("chebotarev reference value")
{
  auto F = CycloField::make(16);
  CHECK(chebotarev_reference(*F, 100) ==
        doctest::Approx(2.71434).epsilon(1e-4));
  CHECK_THROWS_AS(chebotarev_reference(*F, 2), input_error);
}

TEST_CASE("compound probability")
{
  CHECK(compound_probability(Rat(1, 2), {1}) == Rat(1, 2));
  CHECK(compound_probability(Rat(1, 2), {3}) == Rat(1, 8));
  CHECK(compound_probability(Rat(1, 3), {2, 3}) == Rat(1, 729));
  CHECK(compound_probability(Rat(1), {5}) == Rat(1));
  CHECK_THROWS_AS(compound_probability(Rat(3, 2), {1}), input_error);
  CHECK_THROWS_AS(compound_probability(Rat(-1, 2), {1}), input_error);
  CHECK_THROWS_AS(compound_probability(Rat(1, 2), {0}), input_error);
  CHECK_THROWS_AS(compound_probability(Rat(1, 2), {1048577}),
                  resource_error);
}

TEST_CASE("worker count resolution")
{
  CHECK(resolve_threads(7) == 7);
  setenv("CYCLORED_THREADS", "3", 1);
  CHECK(resolve_threads(0) == 3);
  CHECK(resolve_threads(2) == 2);      // explicit wins over environment
  setenv("CYCLORED_THREADS", "300", 1);
  CHECK(resolve_threads(0) == 1);      // out of range falls back
  setenv("CYCLORED_THREADS", "junk", 1);
  CHECK(resolve_threads(0) == 1);
  unsetenv("CYCLORED_THREADS");
  CHECK(resolve_threads(0) == 1);
}

TEST_SUITE_END();
