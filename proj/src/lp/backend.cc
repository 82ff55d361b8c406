#include "goalrec/lp/backend.h"
#include "goalrec/util/errors.h"

namespace goalrec::lp {

BackendRegistry &BackendRegistry::global() {
    static BackendRegistry *registry = [] {
        auto *r = new BackendRegistry();
        r->add(std::make_shared<SimplexBackend>());
        r->add(std::make_shared<ExactRationalBackend>());
        return r;
    }();
    return *registry;
}

void BackendRegistry::add(std::shared_ptr<const LpBackend> backend) {
    std::lock_guard lock(mutex_);
    for (auto &existing : backends_) {
        if (existing->name() == backend->name()) {
            existing = std::move(backend);
            return;
        }
    }
    backends_.push_back(std::move(backend));
}

std::shared_ptr<const LpBackend> BackendRegistry::get(std::string_view name) const {
    std::lock_guard lock(mutex_);
    for (const auto &backend : backends_)
        if (backend->name() == name)
            return backend;
    throw BackendUnavailable(std::string(name));
}

bool BackendRegistry::contains(std::string_view name) const {
    std::lock_guard lock(mutex_);
    for (const auto &backend : backends_)
        if (backend->name() == name)
            return true;
    return false;
}

std::vector<std::string> BackendRegistry::names() const {
    std::lock_guard lock(mutex_);
    std::vector<std::string> result;
    for (const auto &backend : backends_)
        result.push_back(backend->name());
    return result;
}

LpOutcome backend_port(const LinearProgram &lp, std::string_view backend,
                       const BackendRegistry &registry) {
    return registry.get(backend)->solve(lp);
}

}  // namespace goalrec::lp
