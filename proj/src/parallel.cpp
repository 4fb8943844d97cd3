#include <kklab/parallel.hpp>

namespace kklab {

namespace {

unsigned default_threads()
{
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

std::atomic<unsigned> & threads_setting()
{
    static std::atomic<unsigned> value{default_threads()};
    return value;
}

} // namespace

void set_thread_count(unsigned threads) { threads_setting().store(threads == 0 ? default_threads() : threads); }

unsigned thread_count() { return threads_setting().load(); }

} // namespace kklab
