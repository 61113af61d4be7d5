import enum


def _key(name) -> str:
    return name.value if isinstance(name, enum.Enum) else str(name)


class Registry:
    """Name -> factory table. Each subclass keeps its own table."""

    _registry: dict = {}
    kind = "entry"

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        cls._registry = {}

    @classmethod
    def register(cls, name):
        """Decorator to register a factory callable under `name`"""

        def decorator(factory_callable):
            cls._registry[_key(name)] = factory_callable
            return factory_callable

        return decorator

    @classmethod
    def get(cls, name, **kwargs):
        if _key(name) not in cls._registry:
            raise ValueError(f"{cls.kind.capitalize()} {_key(name)} not registered")
        # Call the factory function now, passing kwargs
        return cls._registry[_key(name)](**kwargs)

    @classmethod
    def names(cls) -> list[str]:
        return list(cls._registry)
