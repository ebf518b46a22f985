// Clock and sleeper abstractions. The gateway takes both as injected
// dependencies so the attack harness can elapse delays on a virtual
// timeline instead of blocking the host.
#pragma once

#include <chrono>
#include <cstdint>
#include <thread>

namespace eds {

class Clock {
public:
    virtual ~Clock() = default;
    virtual std::int64_t now_ms() const = 0;
    std::int64_t now_s() const { return now_ms() / 1000; }
};

class Sleeper {
public:
    virtual ~Sleeper() = default;
    virtual void sleep_ms(std::int64_t ms) = 0;
};

class SystemClock final : public Clock {
public:
    std::int64_t now_ms() const override {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::system_clock::now().time_since_epoch())
            .count();
    }
};

class RealSleeper final : public Sleeper {
public:
    void sleep_ms(std::int64_t ms) override {
        if (ms > 0) std::this_thread::sleep_for(std::chrono::milliseconds(ms));
    }
};

class VirtualClock final : public Clock {
public:
    explicit VirtualClock(std::int64_t start_ms = 1'700'000'000'000) : now_(start_ms) {}
    std::int64_t now_ms() const override { return now_; }
    void set_ms(std::int64_t t) { now_ = t; }
    void advance_ms(std::int64_t dt) { now_ += dt; }

private:
    std::int64_t now_;
};

// Sleeping advances the virtual clock in place. Used where a single
// timeline is enough (unit tests, single-stream scenarios).
class VirtualSleeper final : public Sleeper {
public:
    explicit VirtualSleeper(VirtualClock& clock) : clock_(clock) {}
    void sleep_ms(std::int64_t ms) override {
        if (ms > 0) clock_.advance_ms(ms);
        total_ += ms;
    }
    std::int64_t total_slept_ms() const { return total_; }

private:
    VirtualClock& clock_;
    std::int64_t total_ = 0;
};

// Records requested sleeps without advancing any clock. The harness
// scheduler applies the captured amount to the issuing stream's timeline,
// which keeps concurrent attacker streams from serializing on one clock.
class CaptureSleeper final : public Sleeper {
public:
    void sleep_ms(std::int64_t ms) override {
        last_ += ms;
        total_ += ms;
    }
    // Returns and clears the amount requested since the previous take().
    std::int64_t take_ms() {
        std::int64_t v = last_;
        last_ = 0;
        return v;
    }
    std::int64_t total_slept_ms() const { return total_; }

private:
    std::int64_t last_ = 0;
    std::int64_t total_ = 0;
};

}  // namespace eds
