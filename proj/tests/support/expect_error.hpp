#pragma once

#include "qslkit/error.hpp"

namespace oracle {

// Code of the qslkit::Error thrown by f; InternalConsistency stands for "nothing thrown".
template <typename F>
qslkit::Errc error_code(F&& f) {
    try {
        f();
    } catch (const qslkit::Error& e) {
        return e.code();
    }
    return qslkit::Errc::InternalConsistency;
}

}  // namespace oracle
