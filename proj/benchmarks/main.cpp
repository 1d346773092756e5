#include <benchmark/benchmark.h>

// The distro's libbenchmark_main.a carries LTO bytecode from another gcc
// release, so the entry point lives here.
BENCHMARK_MAIN();
