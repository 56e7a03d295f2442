/*
 * fcm: convex polyhedral Fuchsian cone-manifolds
 * Copyright 2026 the fcm authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <chrono>
#include <cmath>
#include <iostream>

#include <functional>
#include <omp.h>

#include "fcm/variational.hpp"

using namespace fcm;

namespace {

double timeIt(const std::function<void()>& fn, int reps) {
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
    int refines = argc > 1 ? std::atoi(argv[1]) : 24;
    int reps = argc > 2 ? std::atoi(argv[2]) : 5;

    ConeMetric base = build_canonical(2, kPi / 10.0);
    for (int i = 0; i < refines; ++i) base = refine(base, i % base.surface().nFaces());
    base = scale(base, 1.05);
    // realized manifold: convex chart, every prism ultraparallel
    RealizeResult rr = realize(base);
    const ConeMetric& m = rr.manifold.metric();
    Heights h = rr.manifold.heights();

    std::cout << "faces: " << m.surface().nFaces()
              << ", vertices: " << m.surface().nVertices()
              << ", threads: " << omp_get_max_threads() << "\n";

    AssembleOptions serialOpts;
    serialOpts.exec = Exec::serial;
    AssembleOptions parOpts;
    parOpts.exec = Exec::parallel;

    double tAsmSerial = timeIt([&] { assemble(m, h, serialOpts); }, reps);
    double tAsmPar = timeIt([&] { assemble(m, h, parOpts); }, reps);

    FuchsianConeManifold P = assemble(m, h, parOpts);
    const double volTol = 1e-11;
    double tVolSerial = timeIt([&] { discrete_curvature(P, volTol, Exec::serial); }, reps);
    double tVolPar = timeIt([&] { discrete_curvature(P, volTol, Exec::parallel); }, reps);

    double sSerial = discrete_curvature(P, volTol, Exec::serial);
    double sPar = discrete_curvature(P, volTol, Exec::parallel);

    std::cout.precision(4);
    std::cout << "assemble    serial " << tAsmSerial << " ms, openmp " << tAsmPar
              << " ms, speedup " << tAsmSerial / tAsmPar << "x\n";
    std::cout << "curvature S serial " << tVolSerial << " ms, openmp " << tVolPar
              << " ms, speedup " << tVolSerial / tVolPar << "x\n";
    std::cout.precision(17);
    std::cout << "S serial = " << sSerial << "\nS openmp = " << sPar
              << (sSerial == sPar ? "  (bit-identical)" : "  (MISMATCH)") << "\n";
    return sSerial == sPar ? 0 : 1;
}
