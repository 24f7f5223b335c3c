"""
Defines a generic configuration handling mechanism.
This allows all tunable parameters (tolerances, seeds, rendering choices, experiment sizes) to be handled in a single object.
That object can be passed around to all configurable classes, allowing them to extract whatever information they need.
A typical usage is as follows:

```
    from hypertess.configuration import Configuration, configurable
    from typing import Annotated

    @configurable
    class C:
        param: Annotated[int, "Param", "some help string"] = 3
        other: Annotated[float, "Param", "another help string", "--other"] = 0.5

        def __init__(self, configuration: Configuration):
            configuration.initialize(self)

    configuration = Configuration()
    obj = C(configuration)
    obj.param  # Returns 3
```

Here, the @configurable decorator informs that this is a class that can take configuration parameters.
The type annotated variable param specifies that this is a configuration parameter, with a help string and a default value of 3.
It is given the command line argument --C.param <value>.
An optional fourth annotation gives a short flag instead, so that other is set by --other <value>.
"""
import argparse
import json
from typing import Any, Optional, Sequence, get_type_hints

def configurable(cls: type) -> type:
    """
    A class decorator that processes Param declarations within the class.
    """
    for a, t in get_type_hints(cls, include_extras = True).items():
        if getattr(t, "__metadata__", (None,))[0] == "Param":
            flag = t.__metadata__[2] if len(t.__metadata__) > 2 else None
            Configuration.add_param(class_name = cls.__name__, name = a, default = getattr(cls, a), type = t.__origin__, help = t.__metadata__[1], flag = flag) # type: ignore
            delattr(cls, a)
    return cls

class Configuration:
    """
    Configurations are objects that contain all settings used when computing tessellations and running experiments.
    Instead of passing individual tolerances and seeds to each operation, the whole configuration is passed.
    The parameters are grouped under the classes to which they apply.
    A configuration object can be initialized from command line arguments or from a JSON string.
    """

    # Params are stored in a three level dictionary which is defined on the class.
    # The first level is class names, the second is parameter names, and the third is parameter information.
    # The parameter information is type, default, help string and command line flag.
    params: dict[str, dict[str, dict[str, Any]]] = dict()

    # Command line parser for the parameters, used as a parent parser by the cli module.
    parser = argparse.ArgumentParser(add_help = False)

    def __init__(self):
        """
        Creates a configuration object with all parameters set to default values.
        """
        # Values are stored in a two level data dictionary defined on the object.
        # The first level is class names, the second is parameter names mapping to values.
        self.data: dict[str, dict[str, Any]] = dict()

        for c, ps in self.params.items():
            for p, d in ps.items():
                self.set_param_value(c, p, d["default"])

    @classmethod
    def add_param(cls, class_name: str, name: str, type: Any, default: Any, help: str, flag: Optional[str] = None) -> None:
        """
        Adds a parameter to a class, with a type, default value, and a help string.
        Typically, this method is called in conjunction with the definition of the class to which it applies.

        Args:
            class_name (str): the name of the class.
            name (str): the name of the parameter.
            type (Any): the type of the parameter.
            default (Any): the default value of the parameter.
            help (str): a help string.
            flag (Optional[str]): a command line flag replacing the default --Class.name form. Defaults to None.
        """
        if class_name not in cls.params:
            cls.params[class_name] = dict()
        p = cls.params[class_name][name] = dict()

        p["type"] = type
        p["default"] = default
        p["help"] = help
        p["flag"] = flag or f"--{class_name}.{name}"

        dest = f"{class_name}.{name}"
        if type == bool:
            cls.parser.add_argument(p["flag"], dest = dest, default = default, help = help, action = argparse.BooleanOptionalAction)
        else:
            cls.parser.add_argument(p["flag"], dest = dest, type = type, default = default, help = help)

    def set_param_value(self, cls: str, name: str, value: Any) -> None:
        """
        Sets the value of a parameter of a certain class.

        Args:
            cls (str): the class to which the parameter belongs.
            name (str): the name of the parameter.
            value (Any): the new value of the parameter.
        """
        if cls not in self.data:
            self.data[cls] = dict()
        self.data[cls].update({ name : value })

    def get_param_value(self, cls: str, name: str) -> Any:
        """
        Returns the current value of a parameter.

        Args:
            cls (str): the class to which the parameter belongs.
            name (str): the name of the parameter.

        Returns:
            Any: the value.
        """
        return self.data[cls][name]

    def initialize(self, obj: Any):
        """
        Initializes object attributes according to the configuration.

        Args:
            obj (Any): the object to be initialized.
        """
        superclasses = [c.__name__ for c in obj.__class__.__mro__]
        for c in superclasses:
            if c in self.data:
                for p, v in self.data[c].items():
                    setattr(obj, p, v)

    def update_from_args(self, args: argparse.Namespace) -> None:
        """
        Updates parameter values from parsed command line arguments.
        Parameters missing from the namespace keep their current values.

        Args:
            args (argparse.Namespace): the parsed arguments.
        """
        for c, ps in self.params.items():
            for p in ps:
                if hasattr(args, f"{c}.{p}"):
                    self.set_param_value(c, p, getattr(args, f"{c}.{p}"))

    def parse_args(self, argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
        """
        Updates parameter values from the command line.

        Args:
            argv (Optional[Sequence[str]]): the arguments to parse. Defaults to sys.argv.

        Returns:
            argparse.Namespace: the parsed command line arguments.
        """
        args = argparse.ArgumentParser(parents = [self.parser]).parse_args(argv)
        self.update_from_args(args)
        return args

    def to_json(self) -> str:
        """
        Generates a string containing the JSON representation of the configuration.

        Returns:
            str: a JSON representation of the configuration.
        """
        return json.dumps(self.data, indent = 4, sort_keys = True)

    def from_json(self, text: str | bytes):
        """
        Updates the configuration with the values provided in the JSON formatted text.
        Unknown classes and parameters are ignored.

        Args:
            text (str | bytes): a JSON representation of a configuration.
        """
        # Reset to default values, in case the configuration was saved with fewer parameters.
        Configuration.__init__(self)
        for cls, param in json.loads(text).items():
            for var, value in param.items():
                if cls in self.params and var in self.params[cls]:
                    self.set_param_value(cls, var, self.params[cls][var]["type"](value))
