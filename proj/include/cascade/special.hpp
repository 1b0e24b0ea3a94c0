#pragma once

namespace cascade {

/// Terminating Gauss series 2F1(-p, b; c; z) = sum_{k=0}^{p} (-p)_k (b)_k / (c)_k z^k / k!.
/// Throws DomainError when (c)_k vanishes before the series terminates.
double hyp2f1_terminating(int p, double b, double c, double z);

/// log(n!) for n >= 0.
double log_factorial(int n);

}  // namespace cascade
