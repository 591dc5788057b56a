// Copyright 2026 The RUS Synthesis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference (threads = 1) against the OpenMP kernels (threads = 0, all cores).
#include <benchmark/benchmark.h>

#include "rus/composer.hpp"
#include "rus/search.hpp"

namespace {

using namespace rus;

const std::vector<BaseRef> &refs() {
    static const BaseDatabase db = [] {
        auto r = run_search(TemplateConfig{"default", 6}, {}, 0);
        return merge_results({r.records});
    }();
    static const std::vector<BaseRef> out = base_refs(db);
    return out;
}

void BM_Search(benchmark::State &st) {
    SearchSpace space(TemplateConfig{"default", static_cast<int>(st.range(1))});
    for (auto _ : st) benchmark::DoNotOptimize(run_search(space, {}, static_cast<int>(st.range(0))));
}

void BM_ExpandAxial(benchmark::State &st) {
    const auto &r = refs();
    for (auto _ : st) benchmark::DoNotOptimize(expand_axial(r, 16, static_cast<int>(st.range(0))));
}

void BM_ExpandNonAxial(benchmark::State &st) {
    const auto &r = refs();
    for (auto _ : st) benchmark::DoNotOptimize(expand_nonaxial(r, 10, static_cast<int>(st.range(0))));
}

}  // namespace

BENCHMARK(BM_Search)->ArgNames({"threads", "max_t"})->Args({1, 4})->Args({0, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExpandAxial)->ArgName("threads")->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExpandNonAxial)->ArgName("threads")->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
