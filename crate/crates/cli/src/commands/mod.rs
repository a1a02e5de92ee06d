pub mod group;
pub mod screen;
pub mod search;
pub mod shard_plan;
pub mod verify;
