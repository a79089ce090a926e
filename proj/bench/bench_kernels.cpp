// Wall-clock comparison of the OpenMP kernels against their serial reference
// implementations on desk-scale instances.

#include <chrono>
#include <cstdio>
#include <string>

#include "girthlab/codes.hpp"
#include "girthlab/equations.hpp"
#include "girthlab/hypergraph.hpp"
#include "girthlab/pipelines.hpp"

using namespace girthlab;
using clock_t_ = std::chrono::steady_clock;

namespace {

double seconds_since(clock_t_::time_point t0) {
    return std::chrono::duration<double>(clock_t_::now() - t0).count();
}

void row(const std::string& name, double serial, double parallel) {
    std::printf("%-40s %10.3fs %10.3fs %8.2fx\n", name.c_str(), serial, parallel,
                parallel > 0 ? serial / parallel : 0.0);
}

hypergraph::BergeHypergraph rs_instance(unsigned d) {
    auto Hc = codes::rs_parity(7, d);
    std::vector<std::uint64_t> A(Hc.n);
    for (unsigned col = 0; col < Hc.n; ++col) {
        std::uint64_t code = 0;
        for (unsigned r2 = Hc.t; r2-- > 0;) code = code * Hc.q + Hc.at(r2, col);
        A[col] = code;
    }
    std::vector<std::int64_t> lam = {1, 2, 4};
    return hypergraph::BergeHypergraph::build(
        hypergraph::RingDescriptor::fq_vectors(7, Hc.t), lam, A);
}

}  // namespace

int main() {
    std::printf("%-40s %11s %11s %9s\n", "kernel", "serial", "openmp", "speedup");

    {
        auto H = codes::bch_d6(7, 2);
        auto t0 = clock_t_::now();
        auto a = codes::min_distance_serial(H, 5);
        double ts = seconds_since(t0);
        t0 = clock_t_::now();
        auto b = codes::min_distance(H, 5);
        double tp = seconds_since(t0);
        if (a.value != b.value) std::printf("MISMATCH min_distance\n");
        row("min_distance bch(7,2) cap 5", ts, tp);
    }

    {
        auto H = rs_instance(5);
        hypergraph::GirthOptions go;
        go.cap = 7;
        auto t0 = clock_t_::now();
        auto a = hypergraph::berge_girth_serial(H, go);
        double ts = seconds_since(t0);
        t0 = clock_t_::now();
        auto b = hypergraph::berge_girth(H, go);
        double tp = seconds_since(t0);
        if (a.g != b.g) std::printf("MISMATCH berge_girth\n");
        row("berge_girth rs(7,5) N=7203 cap 7", ts, tp);
    }

    {
        auto H = rs_instance(6);
        auto t0 = clock_t_::now();
        auto a = hypergraph::algebraic_girth_certificate_serial(H, 6);
        double ts = seconds_since(t0);
        t0 = clock_t_::now();
        auto b = hypergraph::algebraic_girth_certificate(H, 6);
        double tp = seconds_since(t0);
        if (a.kind != b.kind) std::printf("MISMATCH certificate\n");
        row("algebraic certificate rs(7,6) g=6", ts, tp);
    }

    {
        equations::IntLinearEquation eq{{1, 2, 3, -6}};
        std::vector<std::uint64_t> B;
        for (std::uint64_t v = 0; v < 550; v += 3) B.push_back(v * v % 997);
        std::sort(B.begin(), B.end());
        B.erase(std::unique(B.begin(), B.end()), B.end());
        auto ring = equations::RingSpec::mod(997);
        auto t0 = clock_t_::now();
        auto a = equations::find_nontrivial_serial(eq, B, ring, 2'000'000'000);
        double ts = seconds_since(t0);
        t0 = clock_t_::now();
        auto b = equations::find_nontrivial(eq, B, ring, 2'000'000'000);
        double tp = seconds_since(t0);
        if (a != b) std::printf("MISMATCH find_nontrivial\n");
        row("find_nontrivial k=4 |B|=~180 mod 997", ts, tp);
    }

    return 0;
}
