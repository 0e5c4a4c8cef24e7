"""Social diffusion and global drift on adaptive networks."""

__version__ = "0.1.0"
