#include "cascade/special.hpp"

#include <cmath>
#include <string>

#include "cascade/types.hpp"

namespace cascade {

double hyp2f1_terminating(int p, double b, double c, double z) {
  if (p < 0) throw DomainError("hyp2f1_terminating: p must be >= 0");
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 0; k < p; ++k) {
    const double ck = c + k;
    if (ck == 0.0) throw DomainError("hyp2f1_terminating: (c)_k vanishes at k = " + std::to_string(k + 1));
    term *= static_cast<long double>(-p + k) * (b + k) / (static_cast<long double>(ck) * (k + 1)) * z;
    sum += term;
  }
  return static_cast<double>(sum);
}

double log_factorial(int n) {
  if (n < 0) throw DomainError("log_factorial: negative argument");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace cascade
