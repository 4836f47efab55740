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

#include "cyclored/errors.hpp"
#include "cyclored/intmath.hpp"

using namespace cyclored;

TEST_SUITE_BEGIN("intmath");

TEST_CASE("primality and prime listing")
{
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(3));
  CHECK(is_prime_u64(97));
  CHECK(is_prime_u64(2147483647ULL));
  CHECK_FALSE(is_prime_u64(0));
  CHECK_FALSE(is_prime_u64(1));
  CHECK_FALSE(is_prime_u64(91));     // 7 * 13
  CHECK_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to 2,3,5,7

  auto ps = primes_below(30);
  std::vector<u64> want{2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  CHECK(ps == want);
}

TEST_CASE("factorization, phi, moebius, divisors")
{
  auto f = factorize_u64(360);
  REQUIRE(f.size() == 3);
  CHECK(f[2] == 3);
  CHECK(f[3] == 2);
  CHECK(f[5] == 1);

  CHECK(euler_phi_u64(1) == 1);
  CHECK(euler_phi_u64(2) == 1);
  CHECK(euler_phi_u64(12) == 4);
  CHECK(euler_phi_u64(16) == 8);
  CHECK(euler_phi_u64(48) == 16);

  CHECK(moebius_u64(1) == 1);
  CHECK(moebius_u64(2) == -1);
  CHECK(moebius_u64(6) == 1);
  CHECK(moebius_u64(12) == 0);
  CHECK(moebius_u64(30) == -1);

  auto ds = divisors_u64(12);
  std::vector<u64> want{1, 2, 3, 4, 6, 12};
  CHECK(ds == want);
}

TEST_CASE("multiplicative order")
{
  CHECK(multiplicative_order(7, 8) == 2);
  CHECK(multiplicative_order(1, 15) == 1);
  CHECK(multiplicative_order(2, 5) == 4);
  CHECK(multiplicative_order(5, 48) == 4);
  CHECK_THROWS_AS(multiplicative_order(6, 8), input_error);
}

TEST_CASE("valuation and powers")
{
  CHECK(valuation(Int(48), Int(2)) == 4);
  CHECK(valuation(Int(48), Int(3)) == 1);
  CHECK(valuation(Int(7), Int(2)) == 0);
  CHECK(int_pow(Int(3), 5) == 243);
  CHECK(int_pow(Int(2), 0) == 1);
  CHECK(rat_pow(Rat(2, 3), 3) == Rat(8, 27));
  CHECK(rat_pow(Rat(2, 3), -2) == Rat(9, 4));
  CHECK(rat_pow(Rat(5), 0) == Rat(1));
}

TEST_CASE("rounding")
{
  CHECK(round_nearest(Rat(7, 2)) == 4);    // half rounds up
  CHECK(round_nearest(Rat(-7, 2)) == -3);  // towards +infinity
  CHECK(round_nearest(Rat(10, 3)) == 3);
  CHECK(round_nearest(Rat(-10, 3)) == -3);
  CHECK(floor_rat(Rat(10, 3)) == 3);
  CHECK(floor_rat(Rat(-10, 3)) == -4);
  CHECK(floor_rat(Rat(6, 2)) == 3);
}

TEST_CASE("splitmix determinism")
{
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
}

TEST_SUITE_END();
