#pragma once

#include <cstddef>
#include <functional>

namespace mfap {

// Worker cap shared by every parallel loop in the library. 0 means
// std::thread::hardware_concurrency().
void set_thread_count(unsigned threads);
unsigned thread_count();

// Runs body(i) for i in [0, tasks). Tasks are claimed dynamically, so body
// must write its result into a slot owned by i; callers merge in index
// order, which keeps results independent of the schedule.
void parallel_for(std::size_t tasks, const std::function<void(std::size_t)>& body);

}  // namespace mfap
