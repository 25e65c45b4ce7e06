//! Typed identifiers for the entities and annotation objects that
//! cross-reference each other throughout a corpus.
//!
//! Keeping these as distinct newtypes prevents silent mix-ups between, say,
//! a markable id and the entity ids it refers to.

macro_rules! id_type {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(
            Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash,
            serde::Serialize, serde::Deserialize,
        )]
        #[serde(transparent)]
        pub struct $name(pub String);

        impl $name {
            pub fn new(id: impl Into<String>) -> Self {
                Self(id.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl std::fmt::Display for $name {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(id: &str) -> Self {
                Self(id.to_owned())
            }
        }

        impl From<String> for $name {
            fn from(id: String) -> Self {
                Self(id)
            }
        }
    };
}

id_type!(
    /// Identifier of a dot in a view. Shared dots carry the same id in both views.
    EntityId
);
id_type!(
    /// Identifier of a referring expression (minimal noun phrase).
    MarkableId
);
id_type!(
    /// Identifier of a spatial expression annotation.
    ExpressionId
);
id_type!(
    /// Identifier of a modifier annotation.
    ModifierId
);
