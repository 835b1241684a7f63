#include "specrelax/errors.hpp"

#include <sstream>

namespace specrelax {

namespace {

std::string blowup_message(double t, long step, const std::string& field, double max_abs)
{
    std::ostringstream os;
    os << "blowup in field '" << field << "' at t=" << t << " (step " << step
       << "), max|value|=" << max_abs;
    return os.str();
}

std::string positivity_message(const std::string& q, int node, double x, double v, double t)
{
    std::ostringstream os;
    os << "positivity loss: " << q << "=" << v << " at node " << node << " (x=" << x
       << "), t=" << t;
    return os.str();
}

} // namespace

BlowupError::BlowupError(double t_, long step_, std::string field_, double max_abs_)
    : std::runtime_error(blowup_message(t_, step_, field_, max_abs_)),
      t(t_), step(step_), field(std::move(field_)), max_abs(max_abs_)
{
}

PositivityError::PositivityError(std::string quantity_, int node_, double x_, double value_,
                                 double t_)
    : std::runtime_error(positivity_message(quantity_, node_, x_, value_, t_)),
      quantity(std::move(quantity_)), node(node_), x(x_), value(value_), t(t_)
{
}

} // namespace specrelax
