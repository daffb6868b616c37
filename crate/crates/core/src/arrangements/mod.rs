//! Arrangement descriptors, permutation combinatorics and depth-2 normal forms.

mod combinatorics;
mod normal_form;
mod spec;
mod table1;

pub use combinatorics::{
    blocks, cable_perm, contract_blocks, decable_perm, linking_equivalent, linking_matrix_of_perm,
    permutation_depth, Block, LinkingMatrix, Relabeling,
};
pub use normal_form::{
    bottom_components_d2, count_d2_classes, depth2_normal_form, depth2_tors1,
    enumerate_d2_normal_forms, format_codims, parse_codims, partition_numbers, sigma_lists,
    NormalFormD2, SigmaLists,
};
pub(crate) use spec::extend_linking;
pub use spec::{catalog, ArrangementSpec, CatalogName, Resolved};
pub use table1::{table1_rows, Table1Row};
