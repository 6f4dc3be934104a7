// Wigner 3-j and 6-j symbols for the angular momentum algebra of the
// Rb-87 D2 hyperfine line. Momenta are carried as twice their value so
// half-integers stay exact; Racah sums run in extended precision.
#pragma once

namespace cqed {

// Non-negative total angular momentum (F, J, I, ...), stored as 2j.
// Projections (m) travel as plain twice-the-value ints next to their j.
class AngularMomentum {
 public:
  static AngularMomentum from_twice(int twice_value);
  static AngularMomentum integer(int j) { return from_twice(2 * j); }
  static AngularMomentum half_odd(int numerator) { return from_twice(numerator); }

  int twice() const { return twice_; }
  double value() const { return 0.5 * twice_; }

 private:
  explicit AngularMomentum(int twice_value) : twice_(twice_value) {}
  int twice_ = 0;
};

// ( j1 j2 j3 ; m1 m2 m3 ). Returns 0 when the triangle or m-sum condition
// fails or any |m| exceeds its j. Throws std::invalid_argument when a
// (j, m) pair mixes integer and half-integer character.
double wigner3j(AngularMomentum j1, AngularMomentum j2, AngularMomentum j3,
                int two_m1, int two_m2, int two_m3);

// { j1 j2 j3 ; j4 j5 j6 }. Returns 0 when any of the four triads fails
// the triangle condition or has a half-integer sum.
double wigner6j(AngularMomentum j1, AngularMomentum j2, AngularMomentum j3,
                AngularMomentum j4, AngularMomentum j5, AngularMomentum j6);

}  // namespace cqed
