// Acceptance runner: one line per checklist item, nonzero exit on any failure.

#include <cstdio>

#include <latgerbe/checks.hpp>

int main(int argc, char** argv) {
  bool quick = argc > 1 && std::string(argv[1]) == "--quick";
  auto results = latgerbe::checks::run_all(quick);
  int failed = 0;
  for (size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    std::printf("[%s] %2zu %-26s %s\n", r.pass ? "PASS" : "FAIL", i + 1, r.name.c_str(),
                r.detail.c_str());
    if (!r.pass) ++failed;
  }
  if (failed) std::printf("%d of %zu checks failed\n", failed, results.size());
  return failed ? 1 : 0;
}
