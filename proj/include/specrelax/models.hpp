#pragma once

#include "specrelax/grid.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace specrelax {

// One nodal vector per conserved component.
using FieldSet = std::vector<ArrayXd>;

enum class BoundaryKind { Periodic, ReflectingWall, SupersonicInflow, NonReflectingOutflow };

struct BoundaryDescriptor {
    BoundaryKind left = BoundaryKind::Periodic;
    BoundaryKind right = BoundaryKind::Periodic;
};

BoundaryKind parse_boundary(const std::string& s);

class Model {
public:
    explicit Model(std::shared_ptr<const Grid> grid);
    virtual ~Model() = default;

    const Grid& grid() const { return *grid_; }
    std::shared_ptr<const Grid> grid_ptr() const { return grid_; }

    virtual int components() const = 0;
    virtual std::vector<std::string> names() const = 0;

    // Unstabilized (PPS) tendency at nodes. With dealias, state coefficients
    // are truncated before nodal products and product coefficients after.
    virtual void tendency(const FieldSet& q, FieldSet& dq, double t, bool dealias) const = 0;

    // Largest characteristic speed, for the CFL step.
    virtual double max_speed(const FieldSet& q) const = 0;

    // Throws PositivityError when the state is inadmissible.
    virtual void check_state(const FieldSet&, double) const {}

    // Boundary constraints on the full tendency (after stabilization terms).
    virtual void constrain_tendency(const FieldSet&, FieldSet&) const {}

protected:
    ArrayXd resolved(const ArrayXd& u, bool dealias) const;
    // d/dx of a nodal product, truncated when dealiasing.
    ArrayXd ddx(const ArrayXd& f, bool dealias) const;
    ArrayXd project(const ArrayXd& f, bool dealias) const;

    std::shared_ptr<const Grid> grid_;
};

class Burgers : public Model {
public:
    using Model::Model;
    int components() const override { return 1; }
    std::vector<std::string> names() const override { return {"u"}; }
    void tendency(const FieldSet& q, FieldSet& dq, double t, bool dealias) const override;
    double max_speed(const FieldSet& q) const override;
};

ArrayXd burgers_flux(const ArrayXd& u);

class ShallowWater : public Model {
public:
    ShallowWater(std::shared_ptr<const Grid> grid, double g = 1.0);
    int components() const override { return 2; }
    std::vector<std::string> names() const override { return {"h", "hu"}; }
    void tendency(const FieldSet& q, FieldSet& dq, double t, bool dealias) const override;
    double max_speed(const FieldSet& q) const override;
    void check_state(const FieldSet& q, double t) const override;
    double gravity() const { return g_; }

private:
    double g_;
};

struct Primitive {
    ArrayXd rho, u, p, c;
};

// Characteristic amplitudes and their d-combinations at every node.
struct CharacteristicWorkspace {
    ArrayXd lambda[3];
    ArrayXd L[3];
    ArrayXd d[3];
    ArrayXd c;
};

class Euler : public Model {
public:
    Euler(std::shared_ptr<const Grid> grid, BoundaryDescriptor bc, double gamma_gas = 1.4);
    int components() const override { return 3; }
    std::vector<std::string> names() const override { return {"rho", "E", "rhou"}; }
    void tendency(const FieldSet& q, FieldSet& dq, double t, bool dealias) const override;
    double max_speed(const FieldSet& q) const override;
    void check_state(const FieldSet& q, double t) const override;
    void constrain_tendency(const FieldSet& q, FieldSet& dq) const override;

    Primitive primitives(const FieldSet& q, double t) const;
    FieldSet conserved(const ArrayXd& rho, const ArrayXd& u, const ArrayXd& p) const;
    CharacteristicWorkspace characteristics(const FieldSet& q, double t, bool dealias) const;
    // -dF/dx in conservation form, no boundary treatment. Cross-check only.
    void flux_tendency(const FieldSet& q, FieldSet& dq) const;

    double gamma_gas() const { return gas_; }
    const BoundaryDescriptor& boundary() const { return bc_; }

private:
    BoundaryDescriptor bc_;
    double gas_;
};

// 1D wall model: u_t + v u_x = 0, w_t + v w_x = u_x, v_x = H(w).
class HLModel : public Model {
public:
    using Model::Model;
    int components() const override { return 2; }
    std::vector<std::string> names() const override { return {"u", "omega"}; }
    void tendency(const FieldSet& q, FieldSet& dq, double t, bool dealias) const override;
    double max_speed(const FieldSet& q) const override;
    ArrayXd velocity(const ArrayXd& omega) const;
};

// Even (parity +1) or odd (parity -1) continuation of f, defined on [a, b],
// to [2a - b, b].
double mirror_extend(const std::function<double(double)>& f, double a, double x, int parity);

// Nodal [h, hu] on a grid covering the doubled domain.
FieldSet mirror_symmetrize(const Grid& doubled, const std::function<double(double)>& h,
                           const std::function<double(double)>& hu, double a);

// Indices of the nodes lying in [a, b].
std::vector<int> restrict_indices(const Grid& g, double a, double b);

} // namespace specrelax
