#pragma once

#include "dhl/kernels.hpp"

namespace dhl::kernels {

namespace serial {
void fill_kernel_table(const SineBasis& b, const std::vector<int>& side, const std::vector<long>& coord,
                       std::vector<double>& out);
void kernel_sum(const SineBasis& b, const std::vector<std::vector<double>>& coef, std::vector<double>& out);
void sor_colour(long N, std::vector<double>& g, double omega, int colour);
double max_residual(long N, const std::vector<double>& g);
ScanResult complex_scan(const SineBasis& b, const std::vector<std::complex<double>>& zs, const std::vector<long>& ms);
}  // namespace serial

namespace omp {
void fill_kernel_table(const SineBasis& b, const std::vector<int>& side, const std::vector<long>& coord,
                       std::vector<double>& out);
void kernel_sum(const SineBasis& b, const std::vector<std::vector<double>>& coef, std::vector<double>& out);
void sor_colour(long N, std::vector<double>& g, double omega, int colour);
double max_residual(long N, const std::vector<double>& g);
ScanResult complex_scan(const SineBasis& b, const std::vector<std::complex<double>>& zs, const std::vector<long>& ms);
}  // namespace omp

// Shared per-row helpers (pure, used by both variants).
double table_entry(const SineBasis& b, long n, long m, int side, long coord);
double kernel_sum_at(const SineBasis& b, const std::vector<std::vector<double>>& coef, long n, long m);
/// Row of the scan matrix for one z: A_k = first factor * second factor.
void scan_row(const SineBasis& b, std::complex<double> z, long m, int side, std::vector<double>& re,
              std::vector<double>& im);
/// Max over y of |(1/N) sum_k A_k S_k(y)| for one z; returns value and y.
std::pair<double, long> scan_best_y(const SineBasis& b, const std::vector<double>& re, const std::vector<double>& im,
                                    std::vector<double>& acc_re, std::vector<double>& acc_im);
void sor_row(long N, std::vector<double>& g, double omega, long m, int colour);
double residual_row(long N, const std::vector<double>& g, long m);

}  // namespace dhl::kernels
