#include "ftpinn/pinn/adam.hpp"

namespace ftpinn::pinn {

double inverse_time_decay(double lr0, double decay_rate, double decay_steps, std::int64_t epoch) {
    return lr0 / (1.0 + decay_rate * static_cast<double>(epoch) / decay_steps);
}

}  // namespace ftpinn::pinn
