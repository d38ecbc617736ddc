// Parallel union kernels against the serial reference on packing covers.

#include <benchmark/benchmark.h>

#include "cubepack/families.hpp"
#include "cubepack/geometry.hpp"
#include "cubepack/union_kernel.hpp"

namespace {

using namespace cubepack;

std::vector<IndexBox> boxes_for(int dimension, int k) {
  return packing_boxes(random_packing(dimension, 200, 7), k);
}

void BM_CountParallel2D(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto boxes = boxes_for(2, k);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::count_union(2, boxes));
}

void BM_CountReference2D(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto boxes = boxes_for(2, k);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reference::count_union(2, boxes));
}

void BM_CountParallel3D(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto boxes = boxes_for(3, k);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::count_union(3, boxes));
}

void BM_CountReference3D(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto boxes = boxes_for(3, k);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reference::count_union(3, boxes));
}

void BM_UnionCellsParallel2D(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto boxes = boxes_for(2, k);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::union_cells(2, boxes));
}

void BM_UnionCellsReference2D(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto boxes = boxes_for(2, k);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::reference::union_cells(2, boxes));
}

}  // namespace

BENCHMARK(BM_CountParallel2D)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountReference2D)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountParallel3D)->Arg(6)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountReference3D)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UnionCellsParallel2D)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UnionCellsReference2D)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
