pub mod forms;
pub mod group;
pub mod momentum;
pub mod poisson;

pub use forms::{Bivector, PolyForm, PolyOneForm, PolyTwoForm, VectorField};
pub use group::{
    bivector_ratio, check_multiplicative, dressing_fields, field_homomorphism, left_invariant_bivector, maurer_cartan_forms,
    pl_group_bivector, structure_equations, Entry, MatrixGroupModel, McForms,
};
pub use momentum::{
    check_infinitesimal_mm, check_poisson_action, classical_mm_check, cobracket_field, deformation_identities, heisenberg_obstruction,
    ClassicalMm, DeformationIdentities, HeisenbergObstruction, InfinitesimalMm,
};
pub use poisson::{casimir_check, check_jacobi_coords, hamiltonian_field, koszul_bracket, poisson_bracket};
