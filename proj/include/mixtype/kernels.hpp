#pragma once

namespace mixtype {

// Controls truncation of the image sums behind the strip heat kernels.
struct KernelConfig {
    double series_tol = 1e-12; // stop once a whole |n| shell contributes less
    int n_cap = 32;            // hard cap on the image index
    double min_dt = 1e-12;     // floor on y-y1 for direct kernel evaluation

    void validate() const;
};

// All kernel values share the image family z -> exp(-z^2/(4(y-y1))) with
// arguments x-x1+2n (direct) and x+x1+2n (reflected). G carries the odd
// combination (Dirichlet pair), N the even one, so that G_x = -N_{x1} and
// G_{x1 x} = N_{y1}.
struct KernelValues {
    double G = 0.0;
    double G_x = 0.0;
    double G_x1 = 0.0;
    double N = 0.0;
    double N_x1 = 0.0;
    double N_y1 = 0.0;
};

KernelValues heat_kernels(double x, double y, double x1, double y1, const KernelConfig& cfg);

double green_G(double x, double y, double x1, double y1, const KernelConfig& cfg);
double green_G_x(double x, double y, double x1, double y1, const KernelConfig& cfg);
double green_G_x1(double x, double y, double x1, double y1, const KernelConfig& cfg);
double kernel_N(double x, double y, double x1, double y1, const KernelConfig& cfg);
double kernel_N_x1(double x, double y, double x1, double y1, const KernelConfig& cfg);
double kernel_N_y1(double x, double y, double x1, double y1, const KernelConfig& cfg);

} // namespace mixtype
